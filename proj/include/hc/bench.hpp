#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hc/dlds.hpp"
#include "hc/proof.hpp"

namespace hc {

// Canonical key-sorted compact JSON bytes; the common substrate both
// compressors are measured against.
std::string serialize_proof(const TreeDerivation& t);
std::string serialize_proof(const DLDS& d);

struct HuffmanResult {
  std::size_t bytes = 0;  // code table included
  double ratio = 0.0;
};

// Static byte-frequency Huffman; the table costs one count per symbol seen.
HuffmanResult huffman_compress(const std::string& data);

struct BenchRecord {
  std::string family;
  int param = 0;
  std::size_t orig_bytes = 0;
  long long hc_size = 0;
  double hc_ratio = 0.0;  // size_of(compressed grounded) / size_of(original)
  std::size_t huffman_bytes = 0;
  double huffman_ratio = 0.0;
  double compress_ms = 0.0;
  double verify_ms = 0.0;
};

// Per instance: generate, greedify, decorate, compress, ground, verify (a
// failure aborts the row), record sizes, ratios and wall times.
std::vector<BenchRecord> bench_suite(const std::string& family,
                                     const std::vector<int>& params);

std::string bench_to_csv(const std::vector<BenchRecord>& rows);

}  // namespace hc
