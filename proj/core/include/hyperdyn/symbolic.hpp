#pragma once

// Shift spaces: eventually periodic bi-infinite sequences, the shift map,
// subshifts of finite type, cylinder mixing, periodic-point counts and the
// decidable proximality/asymptoticity tests.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdyn/exactnum.hpp"

namespace hyperdyn {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

std::string word_to_string(const Word& w);
/// Digits only (whitespace ignored); each digit must be < alphabet_size.
Word parse_word(std::string_view text, int alphabet_size = 10);

/// ...LLL C RRR... with C starting at coordinate center_start.
///
/// Canonical form: both periods primitive, C shrunk until neither tail can
/// absorb an end symbol. When C is empty the boundary is pushed as far right
/// as the left tail allows; a purely periodic sequence has L = R and
/// center_start = 0.
class BiSeq {
 public:
  BiSeq(Word left_period, Word center, Word right_period, long long center_start,
        int alphabet_size = 2);

  static BiSeq constant(Symbol s, int alphabet_size = 2);
  static BiSeq periodic(Word period, int alphabet_size = 2);

  Symbol at(long long i) const;
  /// s(from), ..., s(from + length - 1)
  Word window(long long from, std::size_t length) const;

  const Word& left_period() const { return left_; }
  const Word& center() const { return center_; }
  const Word& right_period() const { return right_; }
  long long center_start() const { return center_start_; }
  long long right_tail_start() const {
    return center_start_ + static_cast<long long>(center_.size());
  }
  int alphabet_size() const { return alphabet_; }

  friend bool operator==(const BiSeq&, const BiSeq&) = default;

  /// "(L)* C . R (R)*" with "." in front of index 0.
  std::string to_string() const;
  /// Accepts the to_string form; "*" and "^inf" both mark a repeated tail.
  static BiSeq parse(std::string_view text, int alphabet_size = 2);

 private:
  void canonicalize();

  Word left_;
  Word center_;
  Word right_;
  long long center_start_ = 0;
  int alphabet_ = 2;
};

/// shift(s, n)(i) = s(i + n)
BiSeq shift(const BiSeq& s, long long n);

/// Subshift of finite type given by a 0/1 adjacency matrix.
class SFT {
 public:
  explicit SFT(std::vector<std::vector<std::uint8_t>> adjacency);

  static SFT full_shift(int alphabet_size);
  /// Whitespace-separated 0/1 rows, one row per line; blank lines and
  /// '#' comments ignored.
  static SFT parse(std::string_view text);

  int alphabet_size() const { return static_cast<int>(adj_.size()); }
  bool allowed(Symbol from, Symbol to) const { return adj_[from][to] != 0; }
  const std::vector<std::vector<std::uint8_t>>& adjacency() const { return adj_; }

  std::string to_string() const;

 private:
  std::vector<std::vector<std::uint8_t>> adj_;
};

/// The Adler-Weiss Markov-partition matrix of the cat map (symbols 0..4).
SFT adler_weiss_matrix();

bool word_admissible(const Word& w, const SFT& x);
bool seq_in_sft(const BiSeq& s, const SFT& x);

/// Least k <= k_max with every entry of adjacency^k positive.
std::optional<int> sft_primitivity(const SFT& x, int k_max);

/// trace(adjacency^n): points of period dividing n.
BigInt sft_periodic_count(const SFT& x, unsigned n);

/// Proximality of eventually periodic points reduces to comparing the aligned
/// right tails on one lcm window starting where both tails have begun.
struct TailAlignment {
  long long start = 0;
  long long window = 1;
};

struct SeqProximality {
  bool proximal = false;
  TailAlignment certificate;
};

SeqProximality seq_proximal(const BiSeq& x, const BiSeq& y);
bool seq_asymptotic(const BiSeq& x, const BiSeq& y);

/// Largest r <= limit with x(i) = y(i) for |i| <= r, or -1 if x(0) != y(0).
long long agreement_radius(const BiSeq& x, const BiSeq& y, long long limit);

struct Cylinder {
  Word word;
  long long start = 0;

  /// "word@start" or just "word" (start 0).
  static Cylinder parse(std::string_view text, int alphabet_size = 10);
  std::string to_string() const;
};

struct MixingGap {
  /// hits[n] says whether shift^n(U) meets V, for n = 0..n_max.
  std::vector<bool> hits;
  /// least N >= 1 with hits for every n in [N, n_max]
  std::optional<long long> n_star;
};

MixingGap mixing_gap(const SFT& x, const Cylinder& u, const Cylinder& v, long long n_max);

inline std::ostream& operator<<(std::ostream& os, const BiSeq& v) { return os << v.to_string(); }

}  // namespace hyperdyn
