// Command-line front end. Links only the C interface of the shared library;
// all records are emitted as JSON lines (one record per line) or, with
// --csv, as flattened CSV rows.
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "percolata.h"

namespace {

using nlohmann::json;

// --------------------------------------------------------------------------
// Output

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

/// One CSV row per record, or per element of the record's first
/// array-of-objects field (with the record's scalar fields repeated).
/// Scalar arrays are joined with ';'.
std::vector<json> csv_rows(const json& rec) {
  json base = json::object();
  std::string expand_key;
  for (const auto& [key, value] : rec.items()) {
    if (value.is_array() && !value.empty() && value[0].is_object() &&
        expand_key.empty()) {
      expand_key = key;
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ';';
        joined += scalar_text(item);
      }
      base[key] = joined;
    } else if (value.is_object()) {
      for (const auto& [k2, v2] : value.items()) {
        if (v2.is_primitive()) base[key + "." + k2] = v2;
      }
    } else {
      base[key] = value;
    }
  }
  if (expand_key.empty()) return {base};
  std::vector<json> rows;
  for (const auto& item : rec[expand_key]) {
    json row = base;
    for (const auto& [k2, v2] : item.items()) {
      if (v2.is_primitive()) {
        row[k2] = v2;
      } else if (v2.is_array()) {
        std::string joined;
        for (const auto& x : v2) {
          if (!joined.empty()) joined += ';';
          joined += x.dump();
        }
        row[k2] = joined;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void emit(const std::vector<json>& records, bool csv) {
  if (!csv) {
    for (const auto& rec : records) std::printf("%s\n", rec.dump().c_str());
    return;
  }
  std::vector<json> rows;
  for (const auto& rec : records) {
    for (auto& row : csv_rows(rec)) rows.push_back(std::move(row));
  }
  std::set<std::string> columns;
  for (const auto& row : rows) {
    for (const auto& [key, value] : row.items()) columns.insert(key);
  }
  std::string header;
  for (const auto& c : columns) {
    if (!header.empty()) header += ',';
    header += csv_escape(c);
  }
  std::printf("%s\n", header.c_str());
  for (const auto& row : rows) {
    std::string line;
    for (const auto& c : columns) {
      if (!line.empty()) line += ',';
      if (row.contains(c)) line += csv_escape(scalar_text(row[c]));
    }
    std::printf("%s\n", line.c_str());
  }
}

// --------------------------------------------------------------------------
// Helpers

int fail(pct_status status) {
  std::fprintf(stderr, "error: %s\n", pct_last_error());
  return static_cast<int>(status);
}

/// Takes ownership of a C string, parses it as JSON.
json take(char* s) {
  json out = json::parse(std::string(s));
  pct_string_free(s);
  return out;
}

/// Inclusive p-grid "start:stop:step"; the stop value is included when the
/// grid lands within 1e-12 of it.
std::vector<double> parse_grid(const std::string& text) {
  double start = 0, stop = 0, step = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      step <= 0 || stop < start) {
    throw CLI::ValidationError(
        "p-grid", "expected start:stop:step with step > 0 and stop >= start");
  }
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double p = start + i * step;
    if (p > stop + 1e-12) break;
    out.push_back(p);
  }
  return out;
}

struct GraphHandle {
  pct_graph* g = nullptr;
  ~GraphHandle() { pct_graph_free(g); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolata: Bernoulli bond percolation on products of cycles"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "",
                 "key=value configuration file; command-line flags override");
  bool csv = false;
  app.add_flag("--csv", csv, "emit CSV rows instead of JSON lines");

  int exit_code = 0;
  std::function<int()> action;

  // ball ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("ball", "window vertex/edge/boundary data");
    auto spec = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(0);
    sub->add_option("--spec", *spec, "graph spec, e.g. inf,inf,6")->required();
    sub->add_option("--radius", *radius, "ball radius")->required();
    sub->callback([&, spec, radius] {
      action = [&, spec, radius]() -> int {
        GraphHandle h;
        if (auto st = pct_graph_create(spec->c_str(), *radius, &h.g);
            st != PCT_OK) {
          return fail(st);
        }
        char* out = nullptr;
        if (auto st = pct_graph_info(h.g, &out); st != PCT_OK) return fail(st);
        emit({take(out)}, csv);
        return 0;
      };
    });
  }

  // locality-radius ------------------------------------------------------
  {
    auto* sub = app.add_subcommand("locality-radius",
                                   "largest radius with isomorphic balls");
    auto spec_a = std::make_shared<std::string>();
    auto spec_b = std::make_shared<std::string>();
    auto r_max = std::make_shared<int>(10);
    sub->add_option("--spec-a", *spec_a, "first graph spec")->required();
    sub->add_option("--spec-b", *spec_b, "second graph spec")->required();
    sub->add_option("--r-max", *r_max, "scan cap");
    sub->callback([&, spec_a, spec_b, r_max] {
      action = [&, spec_a, spec_b, r_max]() -> int {
        char* out = nullptr;
        if (auto st = pct_locality_radius(spec_a->c_str(), spec_b->c_str(),
                                          *r_max, &out);
            st != PCT_OK) {
          return fail(st);
        }
        emit({take(out)}, csv);
        return 0;
      };
    });
  }

  // theta-sweep ----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "theta-sweep", "connection probability over an inclusive p-grid");
    auto spec = std::make_shared<std::string>();
    auto grid = std::make_shared<std::string>();
    auto r_w = std::make_shared<int>(0);
    auto samples = std::make_shared<long long>(10000);
    auto seed = std::make_shared<unsigned long long>(0);
    sub->add_option("--spec", *spec)->required();
    sub->add_option("--p-grid", *grid, "start:stop:step, stop inclusive")
        ->required();
    sub->add_option("--r-w", *r_w, "window radius")->required();
    sub->add_option("--samples", *samples, "samples per grid point");
    sub->add_option("--seed", *seed, "RNG seed (required for sweeps)")
        ->required();
    sub->callback([&, spec, grid, r_w, samples, seed] {
      action = [&, spec, grid, r_w, samples, seed]() -> int {
        std::vector<json> records;
        for (double p : parse_grid(*grid)) {
          char* out = nullptr;
          if (auto st = pct_theta(spec->c_str(), p, *r_w, *samples, *seed,
                                  &out);
              st != PCT_OK) {
            return fail(st);
          }
          records.push_back(take(out));
        }
        emit(records, csv);
        return 0;
      };
    });
  }

  // two-point --------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "two-point", "truncated two-point function along the axis");
    auto spec = std::make_shared<std::string>();
    auto p = std::make_shared<double>(0.5);
    auto distances = std::make_shared<std::vector<int>>();
    auto r_w = std::make_shared<int>(0);
    auto samples = std::make_shared<long long>(10000);
    auto seed = std::make_shared<unsigned long long>(0);
    sub->add_option("--spec", *spec)->required();
    sub->add_option("--p", *p)->required();
    sub->add_option("--distances", *distances, "axis distances")->required();
    sub->add_option("--r-w", *r_w, "window radius")->required();
    sub->add_option("--samples", *samples);
    sub->add_option("--seed", *seed, "RNG seed (required for sweeps)")
        ->required();
    sub->callback([&, spec, p, distances, r_w, samples, seed] {
      action = [&, spec, p, distances, r_w, samples, seed]() -> int {
        char* out = nullptr;
        if (auto st = pct_two_point(spec->c_str(), *p, distances->data(),
                                    static_cast<int>(distances->size()), *r_w,
                                    *samples, *seed, &out);
            st != PCT_OK) {
          return fail(st);
        }
        emit({take(out)}, csv);
        return 0;
      };
    });
  }

  // tail --------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "tail", "finite-cluster size tail with stretch-exponent fit");
    auto spec = std::make_shared<std::string>();
    auto p = std::make_shared<double>(0.5);
    auto ks = std::make_shared<std::vector<long long>>();
    auto r_w = std::make_shared<int>(0);
    auto samples = std::make_shared<long long>(10000);
    auto seed = std::make_shared<unsigned long long>(0);
    sub->add_option("--spec", *spec)->required();
    sub->add_option("--p", *p)->required();
    sub->add_option("--ks", *ks, "size thresholds")->required();
    sub->add_option("--r-w", *r_w, "window radius")->required();
    sub->add_option("--samples", *samples);
    sub->add_option("--seed", *seed, "RNG seed (required for sweeps)")
        ->required();
    sub->callback([&, spec, p, ks, r_w, samples, seed] {
      action = [&, spec, p, ks, r_w, samples, seed]() -> int {
        char* out = nullptr;
        if (auto st = pct_tail(spec->c_str(), *p, ks->data(),
                               static_cast<int>(ks->size()), *r_w, *samples,
                               *seed, &out);
            st != PCT_OK) {
          return fail(st);
        }
        emit({take(out)}, csv);
        return 0;
      };
    });
  }

  // cutsets -------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "cutsets", "minimal cutsets separating the origin from the boundary");
    auto spec = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(0);
    auto kind = std::make_shared<std::string>("vertex");
    auto max_size = std::make_shared<int>(4);
    sub->add_option("--spec", *spec)->required();
    sub->add_option("--radius", *radius)->required();
    sub->add_option("--kind", *kind, "vertex or bond")
        ->check(CLI::IsMember({"vertex", "bond"}));
    sub->add_option("--max-size", *max_size);
    sub->callback([&, spec, radius, kind, max_size] {
      action = [&, spec, radius, kind, max_size]() -> int {
        GraphHandle h;
        if (auto st = pct_graph_create(spec->c_str(), *radius, &h.g);
            st != PCT_OK) {
          return fail(st);
        }
        char* out = nullptr;
        if (auto st = pct_cutsets(h.g, kind->c_str(), *max_size, &out);
            st != PCT_OK) {
          return fail(st);
        }
        emit({take(out)}, csv);
        return 0;
      };
    });
  }

  // interfaces -----------------------------------------------------------------
  {
    auto* sub =
        app.add_subcommand("interfaces", "candidate interface enumeration");
    auto spec = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(0);
    auto big_n = std::make_shared<int>(1);
    auto t = std::make_shared<int>(2);
    auto max_size = std::make_shared<int>(3);
    sub->add_option("--spec", *spec)->required();
    sub->add_option("--radius", *radius)->required();
    sub->add_option("--N", *big_n, "goodness scale N");
    sub->add_option("--t", *t, "connectivity parameter");
    sub->add_option("--max-size", *max_size);
    sub->callback([&, spec, radius, big_n, t, max_size] {
      action = [&, spec, radius, big_n, t, max_size]() -> int {
        GraphHandle h;
        if (auto st = pct_graph_create(spec->c_str(), *radius, &h.g);
            st != PCT_OK) {
          return fail(st);
        }
        char* out = nullptr;
        if (auto st = pct_interfaces(h.g, *big_n, *t, *max_size, &out);
            st != PCT_OK) {
          return fail(st);
        }
        emit({take(out)}, csv);
        return 0;
      };
    });
  }

  // series ------------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "series", "truncated series for 1 - theta with envelope data");
    auto spec = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(0);
    auto big_n = std::make_shared<int>(1);
    auto t = std::make_shared<int>(2);
    auto n_max = std::make_shared<int>(6);
    auto z_re = std::make_shared<double>(0.5);
    auto z_im = std::make_shared<double>(0.0);
    auto p0 = std::make_shared<double>(0.5);
    auto r = std::make_shared<double>(0.1);
    sub->add_option("--spec", *spec)->required();
    sub->add_option("--radius", *radius)->required();
    sub->add_option("--N", *big_n);
    sub->add_option("--t", *t);
    sub->add_option("--n-max", *n_max);
    sub->add_option("--z-re", *z_re);
    sub->add_option("--z-im", *z_im);
    sub->add_option("--p0", *p0);
    sub->add_option("--r", *r);
    sub->callback([&, spec, radius, big_n, t, n_max, z_re, z_im, p0, r] {
      action = [&, spec, radius, big_n, t, n_max, z_re, z_im, p0, r]() -> int {
        GraphHandle h;
        if (auto st = pct_graph_create(spec->c_str(), *radius, &h.g);
            st != PCT_OK) {
          return fail(st);
        }
        char* out = nullptr;
        if (auto st = pct_series(h.g, *big_n, *t, *n_max, *z_re, *z_im, *p0,
                                 *r, &out);
            st != PCT_OK) {
          return fail(st);
        }
        emit({take(out)}, csv);
        return 0;
      };
    });
  }

  // oracle ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "oracle", "exact event polynomial by brute force (edge cap 22)");
    auto spec = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(0);
    auto event = std::make_shared<std::string>("connect");
    auto distance = std::make_shared<int>(1);
    auto ps = std::make_shared<std::vector<double>>();
    sub->add_option("--spec", *spec)->required();
    sub->add_option("--radius", *radius)->required();
    sub->add_option("--event", *event, "connect, two-point, or interface-ie")
        ->check(CLI::IsMember({"connect", "two-point", "interface-ie"}));
    sub->add_option("--distance", *distance, "two-point axis distance");
    sub->add_option("--ps", *ps, "evaluation points");
    sub->callback([&, spec, radius, event, distance, ps] {
      action = [&, spec, radius, event, distance, ps]() -> int {
        GraphHandle h;
        if (auto st = pct_graph_create(spec->c_str(), *radius, &h.g);
            st != PCT_OK) {
          return fail(st);
        }
        char* out = nullptr;
        if (auto st = pct_oracle(h.g, event->c_str(), *distance, ps->data(),
                                 static_cast<int>(ps->size()), &out);
            st != PCT_OK) {
          return fail(st);
        }
        emit({take(out)}, csv);
        return 0;
      };
    });
  }

  // accept -----------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("accept", "run the acceptance criteria");
    auto only = std::make_shared<std::vector<int>>();
    sub->add_option("--only", *only, "criterion ids (default: all)");
    sub->callback([&, only] {
      action = [&, only]() -> int {
        char* out = nullptr;
        if (auto st = pct_accept(only->data(),
                                 static_cast<int>(only->size()), &out);
            st != PCT_OK) {
          return fail(st);
        }
        json rec = take(out);
        emit({rec}, csv);
        return rec["failures"].get<int>() == 0 ? 0 : 1;
      };
    });
  }

  CLI11_PARSE(app, argc, argv);
  if (action) exit_code = action();
  return exit_code;
}
