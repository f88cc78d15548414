#include "percolata.h"

#include <complex>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <new>
#include <string>

#include <json.hpp>

#include "percolata/acceptance.hpp"
#include "percolata/cutsets.hpp"
#include "percolata/errors.hpp"
#include "percolata/graph.hpp"
#include "percolata/interfaces.hpp"
#include "percolata/oracle.hpp"
#include "percolata/percolation.hpp"

namespace {

using nlohmann::json;
using namespace percolata;

constexpr const char* kVersion = "0.1.0";

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json stamp(const char* record) {
  return json{{"version", kVersion}, {"record", record}};
}

pct_status run(char** out_json, const std::function<json()>& body) {
  if (out_json == nullptr) {
    g_last_error = "null output pointer";
    return PCT_ARGUMENT;
  }
  *out_json = nullptr;
  try {
    *out_json = dup_string(body().dump());
    return PCT_OK;
  } catch (const ArgumentError& e) {
    g_last_error = e.what();
    return PCT_ARGUMENT;
  } catch (const ResourceLimitError& e) {
    g_last_error = e.what();
    return PCT_RESOURCE;
  } catch (const InvariantError& e) {
    g_last_error = e.what();
    return PCT_INVARIANT;
  } catch (const InconclusiveError& e) {
    g_last_error = e.what();
    return PCT_INCONCLUSIVE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PCT_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PCT_INTERNAL;
  }
}

json estimate_json(const EstimateWithError& e) {
  return json{{"estimate", e.estimate}, {"std_error", e.std_error},
              {"samples", e.samples},   {"successes", e.successes},
              {"seed", e.seed},         {"upper95", e.upper95}};
}

json coords_json(const Window& w, const std::vector<int>& vertices) {
  json out = json::array();
  for (int v : vertices) out.push_back(w.coords[v]);
  return out;
}

json polynomial_json(const EventPolynomial& poly) {
  json coeffs = json::array();
  for (const auto& c : poly.coeff) coeffs.push_back(c.str());
  return json{{"edges", poly.m}, {"coeff", coeffs}};
}

}  // namespace

struct pct_graph {
  percolata::Window window;
};

extern "C" {

const char* pct_version(void) { return kVersion; }

const char* pct_last_error(void) { return g_last_error.c_str(); }

void pct_string_free(char* s) { std::free(s); }

pct_status pct_graph_create(const char* spec, int radius, pct_graph** out) {
  if (out == nullptr) {
    g_last_error = "null output pointer";
    return PCT_ARGUMENT;
  }
  *out = nullptr;
  char* ignored = nullptr;
  // Reuse the shared error mapping; build the handle inside the body.
  pct_graph* handle = nullptr;
  const pct_status status = run(&ignored, [&] {
    if (spec == nullptr) throw ArgumentError("null spec");
    handle = new pct_graph{ball(GraphSpec::parse(spec), radius)};
    return json{};
  });
  pct_string_free(ignored);
  if (status == PCT_OK) *out = handle;
  return status;
}

void pct_graph_free(pct_graph* g) { delete g; }

pct_status pct_graph_info(const pct_graph* g, char** out_json) {
  return run(out_json, [&] {
    if (g == nullptr) throw ArgumentError("null graph handle");
    const Window& w = g->window;
    json out = stamp("ball");
    out["spec"] = w.spec.to_string();
    out["radius"] = w.radius;
    out["num_vertices"] = w.num_vertices();
    out["num_edges"] = w.num_edges();
    out["num_boundary"] = static_cast<int>(w.boundary.size());
    out["degree"] = w.spec.degree();
    out["dimension"] = w.spec.dimension();
    return out;
  });
}

pct_status pct_locality_radius(const char* spec_a, const char* spec_b,
                               int r_max, char** out_json) {
  return run(out_json, [&] {
    if (spec_a == nullptr || spec_b == nullptr) {
      throw ArgumentError("null spec");
    }
    auto lr = locality_radius(GraphSpec::parse(spec_a),
                              GraphSpec::parse(spec_b), r_max);
    json out = stamp("locality_radius");
    out["spec_a"] = spec_a;
    out["spec_b"] = spec_b;
    out["r_max"] = r_max;
    out["radius"] = lr.radius;
    out["at_cap"] = lr.at_cap;
    return out;
  });
}

pct_status pct_theta(const char* spec, double p, int r_w, long long samples,
                     unsigned long long seed, char** out_json) {
  return run(out_json, [&] {
    if (spec == nullptr) throw ArgumentError("null spec");
    auto est = connection_estimate(GraphSpec::parse(spec), p, r_w, samples,
                                   seed);
    json out = stamp("theta");
    out["spec"] = spec;
    out["p"] = p;
    out["r_w"] = r_w;
    out.update(estimate_json(est));
    return out;
  });
}

pct_status pct_two_point(const char* spec, double p, const int* distances,
                         int n_distances, int r_w, long long samples,
                         unsigned long long seed, char** out_json) {
  return run(out_json, [&] {
    if (spec == nullptr) throw ArgumentError("null spec");
    if (distances == nullptr || n_distances < 1) {
      throw ArgumentError("need at least one distance");
    }
    std::vector<int> ds(distances, distances + n_distances);
    auto ests = two_point_profile(GraphSpec::parse(spec), p, ds, r_w, samples,
                                  seed);
    json out = stamp("two_point");
    out["spec"] = spec;
    out["p"] = p;
    out["r_w"] = r_w;
    json points = json::array();
    for (std::size_t i = 0; i < ds.size(); ++i) {
      json pt = estimate_json(ests[i]);
      pt["distance"] = ds[i];
      points.push_back(pt);
    }
    out["points"] = points;
    return out;
  });
}

pct_status pct_tail(const char* spec, double p, const long long* ks, int n_ks,
                    int r_w, long long samples, unsigned long long seed,
                    char** out_json) {
  return run(out_json, [&] {
    if (spec == nullptr) throw ArgumentError("null spec");
    if (ks == nullptr || n_ks < 1) {
      throw ArgumentError("need at least one threshold");
    }
    std::vector<std::int64_t> thresholds(ks, ks + n_ks);
    auto ests = cluster_tail_curve(GraphSpec::parse(spec), p, thresholds, r_w,
                                   samples, seed);
    json out = stamp("tail");
    out["spec"] = spec;
    out["p"] = p;
    out["r_w"] = r_w;
    json points = json::array();
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      json pt = estimate_json(ests[i]);
      pt["k"] = thresholds[i];
      points.push_back(pt);
    }
    out["points"] = points;
    auto fit = fit_stretch_exponent(thresholds, ests);
    out["stretch_fit"] = json{{"ok", fit.ok},
                              {"exponent", fit.exponent},
                              {"r_squared", fit.r_squared},
                              {"points", fit.points}};
    return out;
  });
}

pct_status pct_cutsets(const pct_graph* g, const char* kind, int max_size,
                       char** out_json) {
  return run(out_json, [&] {
    if (g == nullptr) throw ArgumentError("null graph handle");
    if (kind == nullptr) throw ArgumentError("null cutset kind");
    const Window& w = g->window;
    const std::string which = kind;
    std::vector<Cutset> cuts;
    if (which == "vertex") {
      cuts = enumerate_minimal_cutsets(w, 0, kSink, max_size);
    } else if (which == "bond") {
      cuts = enumerate_minimal_bond_cutsets(w, 0, kSink, max_size);
    } else {
      throw ArgumentError("kind must be 'vertex' or 'bond'");
    }
    json out = stamp("cutsets");
    out["spec"] = w.spec.to_string();
    out["radius"] = w.radius;
    out["kind"] = which;
    out["max_size"] = max_size;
    out["count"] = cuts.size();
    int connectivity = 0;
    bool any_uncensored = false;
    json list = json::array();
    for (const auto& cs : cuts) {
      json item{{"size", cs.members.size()},
                {"least_k", cs.least_k},
                {"censored", cs.touches_window_boundary}};
      if (which == "vertex") {
        item["members"] = coords_json(w, cs.members);
      } else {
        json edges = json::array();
        for (int e : cs.members) {
          edges.push_back(json::array({w.coords[w.edges[e].first],
                                       w.coords[w.edges[e].second]}));
        }
        item["members"] = edges;
      }
      list.push_back(item);
      if (!cs.touches_window_boundary) {
        any_uncensored = true;
        connectivity = std::max(connectivity, cs.least_k);
      }
    }
    out["cutsets"] = list;
    if (any_uncensored) out["connectivity"] = connectivity;
    return out;
  });
}

pct_status pct_interfaces(const pct_graph* g, int big_n, int t, int max_size,
                          char** out_json) {
  return run(out_json, [&] {
    if (g == nullptr) throw ArgumentError("null graph handle");
    const Window& w = g->window;
    auto cands = enumerate_interfaces(w, big_n, t, max_size);
    json out = stamp("interfaces");
    out["spec"] = w.spec.to_string();
    out["radius"] = w.radius;
    out["big_n"] = big_n;
    out["t"] = t;
    out["max_size"] = max_size;
    out["count"] = cands.size();
    json list = json::array();
    for (const auto& iface : cands) {
      list.push_back(json{{"size", iface.size()},
                          {"members", coords_json(w, iface.members)}});
    }
    out["candidates"] = list;
    return out;
  });
}

pct_status pct_series(const pct_graph* g, int big_n, int t, int n_max,
                      double z_re, double z_im, double p0, double r,
                      char** out_json) {
  return run(out_json, [&] {
    if (g == nullptr) throw ArgumentError("null graph handle");
    auto report = theta_series(g->window, big_n, t, n_max,
                               std::complex<double>{z_re, z_im}, p0, r);
    json out = stamp("series");
    out["spec"] = g->window.spec.to_string();
    out["radius"] = g->window.radius;
    out["big_n"] = big_n;
    out["t"] = t;
    out["n_max"] = n_max;
    out["z"] = json::array({z_re, z_im});
    out["p0"] = p0;
    out["r"] = r;
    out["value"] = json::array({report.value.real(), report.value.imag()});
    out["term_magnitudes"] = report.term_magnitudes;
    out["envelopes"] = report.envelopes;
    out["a_r"] = report.a_r;
    out["envelope_holds"] = report.envelope_holds;
    out["decay_root"] = report.decay_root;
    out["aux_term_magnitudes"] = report.aux_term_magnitudes;
    out["aux_envelope_holds"] = report.aux_envelope_holds;
    out["aux_decay_root"] = report.aux_decay_root;
    return out;
  });
}

pct_status pct_oracle(const pct_graph* g, const char* event, int distance,
                      const double* ps, int n_ps, char** out_json) {
  return run(out_json, [&] {
    if (g == nullptr) throw ArgumentError("null graph handle");
    if (event == nullptr) throw ArgumentError("null event name");
    const Window& w = g->window;
    const std::string which = event;
    json out = stamp("oracle");
    out["spec"] = w.spec.to_string();
    out["radius"] = w.radius;
    out["event"] = which;
    EventPolynomial poly;
    if (which == "connect") {
      poly = exact_event_polynomial(w, [&](std::uint64_t mask) {
        auto c = configuration_from_mask(w, mask);
        auto lab = label_clusters(c);
        return lab.touches_boundary[lab.cluster_of(0)] != 0;
      });
    } else if (which == "two-point") {
      auto axis = w.spec.first_infinite_factor();
      if (!axis) throw ArgumentError("two-point needs an infinite factor");
      Coord target(w.spec.num_factors(), 0);
      target[*axis] = distance;
      const int v = w.index_of(target);
      if (v < 0) throw ArgumentError("distance outside the window");
      out["distance"] = distance;
      poly = exact_event_polynomial(w, [&](std::uint64_t mask) {
        auto c = configuration_from_mask(w, mask);
        auto lab = label_clusters(c);
        return lab.cluster_of(0) == lab.cluster_of(v) &&
               !lab.touches_boundary[lab.cluster_of(0)];
      });
    } else if (which == "interface-ie") {
      auto report = verify_inclusion_exclusion(w, 1, 2, w.num_vertices());
      out["identity_holds"] = report.identity_holds;
      out["unconditioned_identity_holds"] =
          report.unconditioned_identity_holds;
      out["theta_identity_holds"] = report.theta_identity_holds;
      poly = report.lhs_unconditioned;
    } else {
      throw ArgumentError(
          "event must be 'connect', 'two-point', or 'interface-ie'");
    }
    out["polynomial"] = polynomial_json(poly);
    json evals = json::array();
    for (int i = 0; i < n_ps; ++i) {
      if (ps == nullptr) throw ArgumentError("null evaluation points");
      evals.push_back(json{{"p", ps[i]}, {"value", evaluate(poly, ps[i])}});
    }
    out["evaluations"] = evals;
    return out;
  });
}

pct_status pct_accept(const int* ids, int n_ids, char** out_json) {
  return run(out_json, [&] {
    std::vector<int> only;
    for (int i = 0; i < n_ids; ++i) {
      if (ids == nullptr) throw ArgumentError("null id list");
      only.push_back(ids[i]);
    }
    auto results = run_acceptance(only);
    json out = stamp("accept");
    json list = json::array();
    int failures = 0;
    for (const auto& r : results) {
      if (!r.passed) ++failures;
      list.push_back(json{{"id", r.id},
                          {"name", r.name},
                          {"passed", r.passed},
                          {"detail", r.detail},
                          {"seconds", r.seconds}});
    }
    out["criteria"] = list;
    out["failures"] = failures;
    return out;
  });
}

}  // extern "C"
