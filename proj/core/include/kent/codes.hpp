#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace kent {

/// Greedy lexicographic code: scan words 0, 1, 2, ... of length n and keep
/// each word at distance >= d from all kept words. n <= 24.
std::vector<std::uint32_t> lexicode(int n, int d);

/// Cached size of lexicode(n, d).
std::size_t lexicode_size(int n, int d);

/// Arithmetic in GF(2^s) for s in {4, 8} via log/antilog tables.
class GaloisField {
 public:
  explicit GaloisField(int s);
  int bits() const { return s_; }
  int order() const { return 1 << s_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  /// alpha^k for the primitive element alpha.
  std::uint32_t power_of_alpha(int k) const;

 private:
  int s_;
  std::vector<std::uint32_t> exp_;
  std::vector<int> log_;
};

/// Binary code of fixed length with a guaranteed minimum distance.
/// Messages are little-endian digit vectors with the given radix.
class BinaryCode {
 public:
  virtual ~BinaryCode() = default;
  virtual int length() const = 0;
  virtual int distance() const = 0;
  virtual double log2_size() const = 0;
  virtual std::string name() const = 0;
  /// Number of message digits and the radix of each digit.
  virtual int message_digits() const = 0;
  virtual std::uint64_t radix() const = 0;
  virtual std::vector<std::uint8_t> encode(const std::vector<std::uint64_t>& message) const = 0;

  /// Message for a flat index; digits above the family size wrap.
  std::vector<std::uint64_t> message_of(std::uint64_t index) const;
  std::vector<std::uint64_t> random_message(std::mt19937_64& rng) const;
};

/// The single all-zero word.
std::unique_ptr<BinaryCode> make_trivial_code(int n);

/// Lexicode of length n <= 20 and distance d.
std::unique_ptr<BinaryCode> make_lexicode(int n, int d);

/// Reed-Solomon [n_outer, k_outer] over GF(2^s) evaluated at alpha^0..alpha^(n_outer-1),
/// each symbol mapped to the first 2^s words of lexicode(inner_length, inner_distance).
std::unique_ptr<BinaryCode> make_concatenated_rs(int s, int n_outer, int k_outer, int inner_length,
                                                 int inner_distance);

/// Largest code this library can build with length <= n and distance >= d.
/// Falls back to the trivial code.
std::unique_ptr<BinaryCode> best_code(int n, int d);

/// log2 size of best_code(n, d) without building it.
double best_code_log2(int n, int d);

int hamming_distance(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

}  // namespace kent
