#include "kent/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "kent/errors.hpp"

namespace kent {

namespace {

std::vector<std::uint32_t> error_patterns(int n, int max_weight) {
  std::vector<std::uint32_t> out;
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t w = 0; w < limit; ++w) {
    if (std::popcount(w) <= max_weight) out.push_back(w);
  }
  return out;
}

class TrivialCode final : public BinaryCode {
 public:
  explicit TrivialCode(int n) : n_(n) {}
  int length() const override { return n_; }
  int distance() const override { return n_ + 1; }
  double log2_size() const override { return 0.0; }
  std::string name() const override { return "trivial"; }
  int message_digits() const override { return 1; }
  std::uint64_t radix() const override { return 1; }
  std::vector<std::uint8_t> encode(const std::vector<std::uint64_t>&) const override {
    return std::vector<std::uint8_t>(static_cast<std::size_t>(n_), 0);
  }

 private:
  int n_;
};

// Uncoded words (d = 1) or even-weight words (d = 2) of any length.
class ParityCode final : public BinaryCode {
 public:
  ParityCode(int n, bool parity) : n_(n), parity_(parity) {}
  int length() const override { return n_; }
  int distance() const override { return parity_ ? 2 : 1; }
  double log2_size() const override { return parity_ ? n_ - 1 : n_; }
  std::string name() const override { return parity_ ? "even-weight" : "uncoded"; }
  int message_digits() const override { return parity_ ? n_ - 1 : n_; }
  std::uint64_t radix() const override { return 2; }
  std::vector<std::uint8_t> encode(const std::vector<std::uint64_t>& message) const override {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n_), 0);
    std::uint8_t acc = 0;
    for (int i = 0; i < message_digits(); ++i) {
      out[i] = static_cast<std::uint8_t>(message.at(i) & 1u);
      acc ^= out[i];
    }
    if (parity_) out[n_ - 1] = acc;
    return out;
  }

 private:
  int n_;
  bool parity_;
};

class LexiCode final : public BinaryCode {
 public:
  LexiCode(int n, int d) : n_(n), d_(d), words_(lexicode(n, d)) {}
  int length() const override { return n_; }
  int distance() const override { return d_; }
  double log2_size() const override { return std::log2(static_cast<double>(words_.size())); }
  std::string name() const override { return "lexicode"; }
  int message_digits() const override { return 1; }
  std::uint64_t radix() const override { return words_.size(); }
  std::vector<std::uint8_t> encode(const std::vector<std::uint64_t>& message) const override {
    const std::uint32_t w = words_.at(message.at(0));
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[i] = static_cast<std::uint8_t>((w >> i) & 1u);
    return out;
  }

 private:
  int n_;
  int d_;
  std::vector<std::uint32_t> words_;
};

class ConcatenatedRS final : public BinaryCode {
 public:
  ConcatenatedRS(int s, int n_outer, int k_outer, int inner_length, int inner_distance)
      : field_(s), n_outer_(n_outer), k_outer_(k_outer), inner_length_(inner_length),
        inner_distance_(inner_distance) {
    if (n_outer < 1 || n_outer > field_.order() - 1) throw DomainError("outer length must lie in [1, 2^s - 1]");
    if (k_outer < 1 || k_outer > n_outer) throw DomainError("outer dimension must lie in [1, n_outer]");
    inner_ = lexicode(inner_length, inner_distance);
    if (inner_.size() < static_cast<std::size_t>(field_.order())) {
      throw DomainError("inner lexicode has fewer than 2^s words");
    }
    inner_.resize(static_cast<std::size_t>(field_.order()));
  }
  int length() const override { return n_outer_ * inner_length_; }
  int distance() const override { return (n_outer_ - k_outer_ + 1) * inner_distance_; }
  double log2_size() const override { return static_cast<double>(field_.bits() * k_outer_); }
  std::string name() const override {
    return "RS[" + std::to_string(n_outer_) + "," + std::to_string(k_outer_) + "]/GF(2^" +
           std::to_string(field_.bits()) + ") x lexicode[" + std::to_string(inner_length_) + "," +
           std::to_string(field_.bits()) + "," + std::to_string(inner_distance_) + "]";
  }
  int message_digits() const override { return k_outer_; }
  std::uint64_t radix() const override { return static_cast<std::uint64_t>(field_.order()); }
  std::vector<std::uint8_t> encode(const std::vector<std::uint64_t>& message) const override {
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(length()));
    for (int j = 0; j < n_outer_; ++j) {
      // Horner evaluation of the message polynomial at alpha^j.
      const std::uint32_t x = field_.power_of_alpha(j);
      std::uint32_t y = 0;
      for (int k = k_outer_ - 1; k >= 0; --k) {
        y = field_.add(field_.mul(y, x), static_cast<std::uint32_t>(message.at(k)));
      }
      const std::uint32_t w = inner_[y];
      for (int i = 0; i < inner_length_; ++i) out.push_back(static_cast<std::uint8_t>((w >> i) & 1u));
    }
    return out;
  }

 private:
  GaloisField field_;
  int n_outer_;
  int k_outer_;
  int inner_length_;
  int inner_distance_;
  std::vector<std::uint32_t> inner_;
};

// Shortest lexicode length (<= 20) holding at least 2^s words at distance d.
int inner_length_for(int s, int d) {
  for (int n = s; n <= 20; ++n) {
    if (lexicode_size(n, d) >= (std::size_t{1} << s)) return n;
  }
  return 0;
}

}  // namespace

std::vector<std::uint32_t> lexicode(int n, int d) {
  if (n < 1 || n > 24) throw DomainError("lexicode length must lie in [1, 24]");
  if (d < 1) throw DomainError("lexicode distance must be >= 1");
  const std::uint32_t limit = std::uint32_t{1} << n;
  std::vector<std::uint32_t> words;
  if (d > n) return {0};
  const auto patterns = error_patterns(n, d - 1);
  std::vector<bool> covered(limit, false);
  for (std::uint32_t w = 0; w < limit; ++w) {
    if (covered[w]) continue;
    words.push_back(w);
    for (auto e : patterns) covered[w ^ e] = true;
  }
  return words;
}

std::size_t lexicode_size(int n, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::size_t> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({n, d}); it != cache.end()) return it->second;
  }
  const std::size_t size = lexicode(n, d).size();
  std::lock_guard lock(mutex);
  cache[{n, d}] = size;
  return size;
}

GaloisField::GaloisField(int s) : s_(s) {
  std::uint32_t poly = 0;
  if (s == 4) {
    poly = 0x13;
  } else if (s == 8) {
    poly = 0x11d;
  } else {
    throw DomainError("GF(2^s) is available for s = 4 and s = 8");
  }
  const int q = 1 << s;
  exp_.resize(static_cast<std::size_t>(2 * q));
  log_.assign(static_cast<std::size_t>(q), -1);
  std::uint32_t x = 1;
  for (int k = 0; k < q - 1; ++k) {
    exp_[k] = x;
    log_[x] = k;
    x <<= 1;
    if (x & static_cast<std::uint32_t>(q)) x ^= poly;
  }
  for (int k = q - 1; k < 2 * q; ++k) exp_[k] = exp_[k - (q - 1)];
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[static_cast<std::size_t>(log_[a] + log_[b])];
}

std::uint32_t GaloisField::power_of_alpha(int k) const {
  const int period = order() - 1;
  return exp_[static_cast<std::size_t>(((k % period) + period) % period)];
}

std::vector<std::uint64_t> BinaryCode::message_of(std::uint64_t index) const {
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(message_digits()), 0);
  const std::uint64_t r = radix();
  for (auto& d : digits) {
    if (r <= 1) break;
    d = index % r;
    index /= r;
  }
  return digits;
}

std::vector<std::uint64_t> BinaryCode::random_message(std::mt19937_64& rng) const {
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(message_digits()), 0);
  const std::uint64_t r = radix();
  for (auto& d : digits) d = r <= 1 ? 0 : rng() % r;
  return digits;
}

std::unique_ptr<BinaryCode> make_trivial_code(int n) { return std::make_unique<TrivialCode>(n); }

std::unique_ptr<BinaryCode> make_lexicode(int n, int d) {
  if (n > 20) throw DomainError("lexicode families are limited to length 20");
  return std::make_unique<LexiCode>(n, d);
}

std::unique_ptr<BinaryCode> make_concatenated_rs(int s, int n_outer, int k_outer, int inner_length,
                                                 int inner_distance) {
  return std::make_unique<ConcatenatedRS>(s, n_outer, k_outer, inner_length, inner_distance);
}

namespace {

// Parameters of the largest code found for (n, d); kind 0 trivial, 1 lexicode, 2 concatenated.
struct CodeChoice {
  int kind = 0;
  double bits = 0.0;
  int s = 0, n_outer = 0, k_outer = 0, inner_length = 0, inner_distance = 0;
};

CodeChoice choose_code(int n, int d) {
  CodeChoice best;
  if (n <= 20) {
    const double bits = std::log2(static_cast<double>(lexicode_size(n, d)));
    if (bits > best.bits) best = {1, bits};
  }
  for (int s : {4, 8}) {
    for (int di = 1; di <= 8; ++di) {
      const int ni = inner_length_for(s, di);
      if (ni == 0) continue;
      const int n_outer = std::min((1 << s) - 1, n / ni);
      const int d_outer = (d + di - 1) / di;
      if (n_outer < d_outer) continue;
      const int k_outer = n_outer - d_outer + 1;
      const double bits = static_cast<double>(s * k_outer);
      if (bits > best.bits) best = {2, bits, s, n_outer, k_outer, ni, di};
    }
  }
  return best;
}

}  // namespace

double best_code_log2(int n, int d) {
  if (n < 1) throw DomainError("code length must be positive");
  if (d > n) return 0.0;
  if (d <= 1) return n;
  if (d == 2) return n - 1;
  return choose_code(n, d).bits;
}

std::unique_ptr<BinaryCode> best_code(int n, int d) {
  if (n < 1) throw DomainError("code length must be positive");
  if (d > n) return make_trivial_code(n);
  if (d <= 1) return std::make_unique<ParityCode>(n, false);
  if (d == 2) return std::make_unique<ParityCode>(n, true);
  const CodeChoice c = choose_code(n, d);
  if (c.kind == 1) return make_lexicode(n, d);
  if (c.kind == 2) return make_concatenated_rs(c.s, c.n_outer, c.k_outer, c.inner_length, c.inner_distance);
  return make_trivial_code(n);
}

int hamming_distance(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  if (a.size() != b.size()) throw DomainError("words differ in length");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace kent
