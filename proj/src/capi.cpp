#include "hc.h"

#include <cstring>
#include <numeric>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hc/bench.hpp"
#include "hc/compress.hpp"
#include "hc/flow.hpp"
#include "hc/generators.hpp"
#include "hc/json_io.hpp"

using nlohmann::json;

struct hc_proof {
  hc::TreeDerivation tree;
  hc::Foundation foundation;
  bool explicit_foundation = false;
};

struct hc_dlds {
  hc::DLDS d;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
auto guarded(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return decltype(fn()){};
  }
}

hc::DGTD decorate_proof(const hc_proof& p) {
  hc::TreeDerivation greedy = hc::greedify(p.tree);
  if (p.explicit_foundation) return hc::decorate(greedy, p.foundation);
  return hc::decorate(greedy);
}

}  // namespace

extern "C" {

const char* hc_version(void) { return "1.0.0"; }

const char* hc_last_error(void) { return g_last_error.c_str(); }

void hc_string_free(char* s) { std::free(s); }
void hc_proof_free(hc_proof* p) { delete p; }
void hc_dlds_free(hc_dlds* d) { delete d; }

hc_proof* hc_proof_from_json(const char* json_text) {
  return guarded([&]() -> hc_proof* {
    if (!json_text) throw hc::Error("null input");
    hc::LoadedProof loaded = hc::proof_from_json(json_text);
    return new hc_proof{std::move(loaded.tree), std::move(loaded.foundation),
                        loaded.explicit_foundation};
  });
}

char* hc_proof_to_json(const hc_proof* p) {
  return guarded([&]() -> char* {
    if (!p) throw hc::Error("null proof");
    return dup_string(hc::proof_to_json(p->tree, &p->foundation));
  });
}

int hc_proof_validate(const hc_proof* p, char** report_json) {
  if (!p) {
    g_last_error = "null proof";
    return HC_ERR_USAGE;
  }
  try {
    hc::TreeReport report = hc::validate_tree(p->tree);
    if (report_json) {
      json arr = json::array();
      for (const auto& v : report.violations)
        arr.push_back({{"condition", v.condition},
                       {"nodes", v.nodes},
                       {"message", v.message}});
      *report_json = dup_string(arr.dump());
    }
    return report.ok() ? HC_OK : HC_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HC_ERR_USAGE;
  }
}

hc_proof* hc_gen_fibonacci(int n) {
  return guarded([&]() -> hc_proof* {
    hc::TreeDerivation t = hc::gen_fibonacci_proof(n);
    hc::Foundation f = hc::Foundation::from_formulas(t.formulas());
    return new hc_proof{std::move(t), std::move(f), false};
  });
}

hc_proof* hc_gen_nonhamiltonian(const char* digraph_json) {
  return guarded([&]() -> hc_proof* {
    if (!digraph_json) throw hc::Error("null input");
    json j = json::parse(digraph_json);
    hc::Digraph g;
    g.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges"))
      g.edges.insert({e.at(0).get<int>(), e.at(1).get<int>()});
    hc::TreeDerivation t = hc::gen_nonhamiltonian_proof(g);
    hc::Foundation f = hc::Foundation::from_formulas(t.formulas());
    return new hc_proof{std::move(t), std::move(f), false};
  });
}

hc_dlds* hc_proof_to_dlds(const hc_proof* p) {
  return guarded([&]() -> hc_dlds* {
    if (!p) throw hc::Error("null proof");
    return new hc_dlds{hc::to_dlds(decorate_proof(*p))};
  });
}

hc_dlds* hc_proof_compress(const hc_proof* p, int mue_only,
                           char** trace_jsonl) {
  return guarded([&]() -> hc_dlds* {
    if (!p) throw hc::Error("null proof");
    std::vector<hc::TraceEntry> trace;
    hc::DLDS compressed = hc::compress(hc::to_dlds(decorate_proof(*p)),
                                       mue_only != 0,
                                       trace_jsonl ? &trace : nullptr);
    if (trace_jsonl) *trace_jsonl = dup_string(hc::trace_to_jsonl(trace));
    return new hc_dlds{std::move(compressed)};
  });
}

hc_dlds* hc_dlds_from_json(const char* json_text) {
  return guarded([&]() -> hc_dlds* {
    if (!json_text) throw hc::Error("null input");
    return new hc_dlds{hc::dlds_from_json(json_text)};
  });
}

char* hc_dlds_to_json(const hc_dlds* d) {
  return guarded([&]() -> char* {
    if (!d) throw hc::Error("null dlds");
    return dup_string(hc::dlds_to_json(d->d));
  });
}

int hc_dlds_check_validity(const hc_dlds* d, int* valid, char** report_json) {
  if (!d) {
    g_last_error = "null dlds";
    return HC_ERR_USAGE;
  }
  try {
    hc::ValidityReport report = hc::check_validity(d->d);
    if (valid) *valid = report.ok() ? 1 : 0;
    if (report_json) {
      json arr = json::array();
      for (const auto& c : report.conditions)
        arr.push_back({{"condition", c.name},
                       {"pass", c.pass},
                       {"witnesses", c.witnesses}});
      *report_json = dup_string(arr.dump());
    }
    return HC_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HC_ERR_USAGE;
  }
}

int hc_dlds_verify(const hc_dlds* d, const char* delta_csv, int* valid,
                   char** diagnostics_json) {
  if (!d || !delta_csv) {
    g_last_error = "null argument";
    return HC_ERR_USAGE;
  }
  try {
    std::vector<hc::FormulaPtr> delta;
    std::stringstream ss(delta_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) delta.push_back(hc::parse_formula(item));

    hc::ValidityReport report = hc::check_validity(d->d);
    if (!report.ok()) {
      if (valid) *valid = 0;
      if (diagnostics_json) {
        json arr = json::array();
        for (const auto& c : report.conditions) {
          if (c.pass) continue;
          arr.push_back({{"condition", c.name}, {"witnesses", c.witnesses}});
        }
        *diagnostics_json = dup_string(arr.dump());
      }
      return HC_OK;
    }
    hc::GroundedDLDS grounded = hc::ground(d->d);
    hc::VerifyResult vr = hc::verify_derivation(grounded, delta);
    if (valid) *valid = vr.valid ? 1 : 0;
    if (diagnostics_json) *diagnostics_json = dup_string(vr.diagnostics_json());
    return HC_OK;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HC_ERR_USAGE;
  }
}

char* hc_dlds_stats_json(const hc_dlds* d) {
  return guarded([&]() -> char* {
    if (!d) throw hc::Error("null dlds");
    json j;
    long long size = hc::size_of(d->d);
    int h = d->d.height();
    long long m = d->d.foundation.size();
    j["size"] = size;
    j["height"] = h;
    j["foundation"] = m;
    j["nodes"] = d->d.alive_node_count();
    j["ded_edges"] = d->d.alive_edge_count();
    j["anc_edges"] = d->d.anc_edges().size();
    long long bound = static_cast<long long>(h) * m * m * m * m;
    j["hm4_bound"] = bound;
    j["within_hm4"] = size <= bound;
    return dup_string(j.dump(2));
  });
}

char* hc_dlds_to_dot(const hc_dlds* d) {
  return guarded([&]() -> char* {
    if (!d) throw hc::Error("null dlds");
    return dup_string(hc::export_dot(d->d));
  });
}

char* hc_bench_csv(const char* family, int from, int to) {
  return guarded([&]() -> char* {
    if (!family) throw hc::Error("null family");
    std::vector<int> params;
    for (int p = from; p <= to; ++p) params.push_back(p);
    return dup_string(hc::bench_to_csv(hc::bench_suite(family, params)));
  });
}

}  // extern "C"
