#include "hc/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "hc/compress.hpp"
#include "hc/flow.hpp"
#include "hc/generators.hpp"
#include "hc/json_io.hpp"

namespace hc {

namespace {

std::string canonical(const nlohmann::json& j) { return j.dump(); }

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

std::string serialize_proof(const TreeDerivation& t) {
  return canonical(nlohmann::json::parse(proof_to_json(t)));
}

std::string serialize_proof(const DLDS& d) {
  return canonical(nlohmann::json::parse(dlds_to_json(d)));
}

HuffmanResult huffman_compress(const std::string& data) {
  if (data.empty()) throw Error("huffman_compress: empty input");
  std::array<std::size_t, 256> freq{};
  for (unsigned char c : data) freq[c]++;

  struct Item {
    std::size_t weight;
    int tie;
    int left = -1, right = -1;
    int symbol = -1;
  };
  std::vector<Item> pool;
  using QEntry = std::pair<std::pair<std::size_t, int>, int>;
  std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> pq;
  int distinct = 0;
  for (int s = 0; s < 256; ++s) {
    if (!freq[s]) continue;
    pool.push_back({freq[s], static_cast<int>(pool.size()), -1, -1, s});
    pq.push({{freq[s], pool.back().tie}, static_cast<int>(pool.size()) - 1});
    distinct++;
  }
  std::vector<int> depth(256, 0);
  if (distinct == 1) {
    depth[pool[0].symbol] = 1;
  } else {
    while (pq.size() > 1) {
      auto a = pq.top();
      pq.pop();
      auto b = pq.top();
      pq.pop();
      pool.push_back({a.first.first + b.first.first,
                      static_cast<int>(pool.size()), a.second, b.second, -1});
      pq.push({{pool.back().weight, pool.back().tie},
               static_cast<int>(pool.size()) - 1});
    }
    // walk the tree accumulating code lengths
    std::vector<std::pair<int, int>> stack{{pq.top().second, 0}};
    while (!stack.empty()) {
      auto [idx, dep] = stack.back();
      stack.pop_back();
      if (pool[idx].symbol >= 0) {
        depth[pool[idx].symbol] = dep;
        continue;
      }
      stack.push_back({pool[idx].left, dep + 1});
      stack.push_back({pool[idx].right, dep + 1});
    }
  }
  std::size_t payload_bits = 0;
  for (int s = 0; s < 256; ++s) payload_bits += freq[s] * depth[s];
  // table: one byte for the symbol and four for its count, per symbol seen
  std::size_t table_bytes = static_cast<std::size_t>(distinct) * 5 + 2;
  HuffmanResult out;
  out.bytes = (payload_bits + 7) / 8 + table_bytes;
  out.ratio = static_cast<double>(out.bytes) / static_cast<double>(data.size());
  return out;
}

std::vector<BenchRecord> bench_suite(const std::string& family,
                                     const std::vector<int>& params) {
  std::vector<BenchRecord> rows;
  for (int p : params) {
    TreeDerivation tree;
    if (family == "fib") {
      tree = gen_fibonacci_proof(p);
    } else if (family == "nonham") {
      // deterministic non-Hamiltonian family: a single source fanning out
      Digraph g;
      g.n = p;
      for (int v = 2; v <= p; ++v) g.edges.insert({1, v});
      tree = gen_nonhamiltonian_proof(g);
    } else {
      throw Error("bench_suite: unknown family " + family);
    }
    BenchRecord rec;
    rec.family = family;
    rec.param = p;

    DGTD g = decorate(greedify(tree));
    DLDS original = to_dlds(g);
    std::string bytes = serialize_proof(tree);
    rec.orig_bytes = bytes.size();

    // median of three timed runs on the monotonic clock
    std::array<double, 3> ct{}, vt{};
    DLDS compressed;
    for (int run = 0; run < 3; ++run) {
      auto t0 = std::chrono::steady_clock::now();
      compressed = compress(original);
      ct[run] = ms_since(t0);
    }
    std::sort(ct.begin(), ct.end());
    rec.compress_ms = ct[1];

    GroundedDLDS grounded = ground(compressed);
    rec.hc_size = size_of(grounded);
    rec.hc_ratio = static_cast<double>(rec.hc_size) /
                   static_cast<double>(size_of(original));

    VerifyResult vr;
    for (int run = 0; run < 3; ++run) {
      auto t0 = std::chrono::steady_clock::now();
      vr = verify_derivation(grounded, tree.open_assumptions());
      vt[run] = ms_since(t0);
    }
    std::sort(vt.begin(), vt.end());
    rec.verify_ms = vt[1];
    if (!vr.valid)
      throw Error("bench_suite: verification failed for " + family + " " +
                  std::to_string(p) + ": " + vr.diagnostics_json());

    HuffmanResult h = huffman_compress(bytes);
    rec.huffman_bytes = h.bytes;
    rec.huffman_ratio = h.ratio;
    rows.push_back(rec);
  }
  return rows;
}

std::string bench_to_csv(const std::vector<BenchRecord>& rows) {
  std::ostringstream os;
  os << "family,param,orig_bytes,hc_size,hc_ratio,huffman_bytes,"
        "huffman_ratio,compress_ms,verify_ms\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.param << ',' << r.orig_bytes << ',' << r.hc_size
       << ',' << r.hc_ratio << ',' << r.huffman_bytes << ',' << r.huffman_ratio
       << ',' << r.compress_ms << ',' << r.verify_ms << "\n";
  }
  return os.str();
}

}  // namespace hc
