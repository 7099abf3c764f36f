#include "hyperdyn/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace hyperdyn {

namespace {

using BoolMat = std::vector<std::vector<std::uint8_t>>;

long long mod(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

void make_primitive(Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) {
      w.resize(p);
      return;
    }
  }
}

void rotate_left(Word& w) { std::rotate(w.begin(), w.begin() + 1, w.end()); }
void rotate_right(Word& w) { std::rotate(w.rbegin(), w.rbegin() + 1, w.rend()); }

BoolMat bool_mul(const BoolMat& a, const BoolMat& b) {
  const std::size_t n = a.size();
  BoolMat c(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] |= b[k][j];
    }
  }
  return c;
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

void check_alphabet(int alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 256) {
    throw DomainError("alphabet size must be in [2, 256]");
  }
}

void check_same_alphabet(const BiSeq& x, const BiSeq& y) {
  if (x.alphabet_size() != y.alphabet_size()) {
    throw DomainError("sequences are over different alphabets");
  }
}

}  // namespace

std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Symbol c : w) {
    if (c < 10) {
      s.push_back(static_cast<char>('0' + c));
    } else {
      s += "<" + std::to_string(c) + ">";
    }
  }
  return s;
}

Word parse_word(std::string_view text, int alphabet_size) {
  Word w;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("symbol '" + std::string(1, c) + "' is not a digit");
    }
    const int s = c - '0';
    if (s >= alphabet_size) {
      throw ParseError("symbol " + std::to_string(s) + " outside alphabet of size " +
                       std::to_string(alphabet_size));
    }
    w.push_back(static_cast<Symbol>(s));
  }
  return w;
}

// ------------------------------------------------------------------ BiSeq

BiSeq::BiSeq(Word left_period, Word center, Word right_period, long long center_start,
             int alphabet_size)
    : left_(std::move(left_period)),
      center_(std::move(center)),
      right_(std::move(right_period)),
      center_start_(center_start),
      alphabet_(alphabet_size) {
  check_alphabet(alphabet_);
  if (left_.empty() || right_.empty()) throw DomainError("periodic tails must be nonempty");
  for (const Word* w : {&left_, &center_, &right_}) {
    for (Symbol s : *w) {
      if (s >= alphabet_) throw DomainError("symbol outside alphabet");
    }
  }
  canonicalize();
}

BiSeq BiSeq::constant(Symbol s, int alphabet_size) { return {{s}, {}, {s}, 0, alphabet_size}; }

BiSeq BiSeq::periodic(Word period, int alphabet_size) {
  return {period, {}, period, 0, alphabet_size};
}

void BiSeq::canonicalize() {
  make_primitive(left_);
  make_primitive(right_);
  while (!center_.empty() && center_.back() == right_.back()) {
    center_.pop_back();
    rotate_right(right_);
  }
  while (!center_.empty() && center_.front() == left_.front()) {
    center_.erase(center_.begin());
    ++center_start_;
    rotate_left(left_);
  }
  if (!center_.empty()) return;
  if (left_ == right_) {
    // purely periodic: anchor the phase at coordinate 0
    const long long p = static_cast<long long>(right_.size());
    Word r(right_.size());
    for (long long k = 0; k < p; ++k) r[k] = right_[mod(k - center_start_, p)];
    right_ = r;
    left_ = std::move(r);
    center_start_ = 0;
    return;
  }
  // ends after fewer than lcm(|L|, |R|) steps because L != R
  while (left_.front() == right_.front()) {
    rotate_left(left_);
    rotate_left(right_);
    ++center_start_;
  }
}

Symbol BiSeq::at(long long i) const {
  if (i < center_start_) {
    return left_[mod(i - center_start_, static_cast<long long>(left_.size()))];
  }
  if (i < right_tail_start()) return center_[i - center_start_];
  return right_[mod(i - right_tail_start(), static_cast<long long>(right_.size()))];
}

Word BiSeq::window(long long from, std::size_t length) const {
  Word w(length);
  for (std::size_t k = 0; k < length; ++k) w[k] = at(from + static_cast<long long>(k));
  return w;
}

std::string BiSeq::to_string() const {
  const long long lo = std::min(center_start_, 0LL);
  const long long hi = std::max(right_tail_start(), 0LL);
  const Word l = window(lo - static_cast<long long>(left_.size()), left_.size());
  const Word r = window(hi, right_.size());
  std::vector<std::string> parts = {"(" + word_to_string(l) + ")*"};
  if (lo < 0) parts.push_back(word_to_string(window(lo, static_cast<std::size_t>(-lo))));
  parts.emplace_back(".");
  if (hi > 0) parts.push_back(word_to_string(window(0, static_cast<std::size_t>(hi))));
  parts.push_back("(" + word_to_string(r) + ")*");
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

BiSeq BiSeq::parse(std::string_view text, int alphabet_size) {
  check_alphabet(alphabet_size);
  const std::string s = strip_spaces(text);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    return ParseError("bad sequence '" + std::string(text) + "': " + why);
  };
  auto read_tail = [&]() {
    if (pos >= s.size() || s[pos] != '(') throw fail("expected '(' opening a periodic tail");
    const auto close = s.find(')', pos);
    if (close == std::string::npos) throw fail("unclosed '('");
    Word w = parse_word(std::string_view(s).substr(pos + 1, close - pos - 1), alphabet_size);
    if (w.empty()) throw fail("empty periodic tail");
    pos = close + 1;
    if (s.compare(pos, 1, "*") == 0) {
      pos += 1;
    } else if (s.compare(pos, 4, "^inf") == 0) {
      pos += 4;
    } else {
      throw fail("periodic tail must be followed by '*' or '^inf'");
    }
    return w;
  };
  Word left = read_tail();
  const auto dot = s.find('.', pos);
  if (dot == std::string::npos) throw fail("missing '.' origin marker");
  Word before = parse_word(std::string_view(s).substr(pos, dot - pos), alphabet_size);
  pos = dot + 1;
  const auto open = s.find('(', pos);
  if (open == std::string::npos) throw fail("missing right tail");
  Word after = parse_word(std::string_view(s).substr(pos, open - pos), alphabet_size);
  pos = open;
  Word right = read_tail();
  if (pos != s.size()) throw fail("trailing characters");
  const auto start = -static_cast<long long>(before.size());
  before.insert(before.end(), after.begin(), after.end());
  return {std::move(left), std::move(before), std::move(right), start, alphabet_size};
}

BiSeq shift(const BiSeq& s, long long n) {
  return {s.left_period(), s.center(), s.right_period(), s.center_start() - n,
          s.alphabet_size()};
}

// -------------------------------------------------------------------- SFT

SFT::SFT(std::vector<std::vector<std::uint8_t>> adjacency) : adj_(std::move(adjacency)) {
  const std::size_t n = adj_.size();
  if (n < 1 || n > 256) throw DomainError("adjacency matrix size must be in [1, 256]");
  std::vector<bool> col_hit(n, false);
  for (const auto& row : adj_) {
    if (row.size() != n) throw DomainError("adjacency matrix must be square");
    bool row_hit = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] > 1) throw DomainError("adjacency entries must be 0 or 1");
      if (row[j]) {
        row_hit = true;
        col_hit[j] = true;
      }
    }
    if (!row_hit) throw DomainError("adjacency matrix has a zero row");
  }
  if (std::find(col_hit.begin(), col_hit.end(), false) != col_hit.end()) {
    throw DomainError("adjacency matrix has a zero column");
  }
}

SFT SFT::full_shift(int alphabet_size) {
  return SFT(std::vector<std::vector<std::uint8_t>>(
      alphabet_size, std::vector<std::uint8_t>(alphabet_size, 1)));
}

SFT SFT::parse(std::string_view text) {
  std::vector<std::vector<std::uint8_t>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::uint8_t> row;
    std::string tok;
    while (ls >> tok) {
      for (char c : tok) {
        if (c != '0' && c != '1') throw ParseError("adjacency entries must be 0 or 1");
        row.push_back(static_cast<std::uint8_t>(c - '0'));
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty adjacency matrix");
  return SFT(std::move(rows));
}

std::string SFT::to_string() const {
  std::string out;
  for (const auto& row : adj_) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out.push_back(' ');
      out.push_back(static_cast<char>('0' + row[j]));
    }
    out.push_back('\n');
  }
  return out;
}

SFT adler_weiss_matrix() {
  return SFT({{1, 0, 1, 1, 0},
              {1, 0, 1, 1, 0},
              {1, 0, 1, 1, 0},
              {0, 1, 0, 0, 1},
              {0, 1, 0, 0, 1}});
}

bool word_admissible(const Word& w, const SFT& x) {
  for (Symbol s : w) {
    if (s >= x.alphabet_size()) return false;
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!x.allowed(w[i], w[i + 1])) return false;
  }
  return true;
}

bool seq_in_sft(const BiSeq& s, const SFT& x) {
  if (s.alphabet_size() != x.alphabet_size()) {
    throw DomainError("sequence alphabet does not match the SFT");
  }
  // one period of each tail plus both junctions
  const long long from = s.center_start() - static_cast<long long>(s.left_period().size()) - 1;
  const long long to = s.right_tail_start() + static_cast<long long>(s.right_period().size());
  for (long long i = from; i < to; ++i) {
    if (!x.allowed(s.at(i), s.at(i + 1))) return false;
  }
  return true;
}

std::optional<int> sft_primitivity(const SFT& x, int k_max) {
  if (k_max < 1) throw DomainError("sft_primitivity needs k_max >= 1");
  BoolMat power = x.adjacency();
  for (int k = 1; k <= k_max; ++k) {
    const bool positive = std::all_of(power.begin(), power.end(), [](const auto& row) {
      return std::all_of(row.begin(), row.end(), [](std::uint8_t v) { return v != 0; });
    });
    if (positive) return k;
    if (k < k_max) power = bool_mul(power, x.adjacency());
  }
  return std::nullopt;
}

BigInt sft_periodic_count(const SFT& x, unsigned n) {
  if (n == 0) throw DomainError("sft_periodic_count needs n >= 1");
  const std::size_t size = x.adjacency().size();
  using Mat = std::vector<std::vector<BigInt>>;
  auto mul = [size](const Mat& a, const Mat& b) {
    Mat c(size, std::vector<BigInt>(size));
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t k = 0; k < size; ++k) {
        if (a[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < size; ++j) c[i][j] += a[i][k] * b[k][j];
      }
    }
    return c;
  };
  Mat base(size, std::vector<BigInt>(size));
  Mat result(size, std::vector<BigInt>(size));
  for (std::size_t i = 0; i < size; ++i) {
    result[i][i] = 1;
    for (std::size_t j = 0; j < size; ++j) base[i][j] = x.adjacency()[i][j];
  }
  for (unsigned e = n; e > 0; e >>= 1U) {
    if (e & 1U) result = mul(result, base);
    if (e > 1) base = mul(base, base);
  }
  BigInt trace = 0;
  for (std::size_t i = 0; i < size; ++i) trace += result[i][i];
  return trace;
}

SeqProximality seq_proximal(const BiSeq& x, const BiSeq& y) {
  check_same_alphabet(x, y);
  const long long start = std::max(x.right_tail_start(), y.right_tail_start());
  const long long window = std::lcm(static_cast<long long>(x.right_period().size()),
                                    static_cast<long long>(y.right_period().size()));
  // past `start` both sequences are periodic with period dividing `window`
  bool same = true;
  for (long long i = start; i < start + window && same; ++i) same = x.at(i) == y.at(i);
  return {same, {start, window}};
}

bool seq_asymptotic(const BiSeq& x, const BiSeq& y) { return seq_proximal(x, y).proximal; }

long long agreement_radius(const BiSeq& x, const BiSeq& y, long long limit) {
  check_same_alphabet(x, y);
  if (x.at(0) != y.at(0)) return -1;
  long long r = 0;
  while (r < limit && x.at(r + 1) == y.at(r + 1) && x.at(-r - 1) == y.at(-r - 1)) ++r;
  return r;
}

Cylinder Cylinder::parse(std::string_view text, int alphabet_size) {
  Cylinder c;
  const auto at = text.find('@');
  c.word = parse_word(text.substr(0, at), alphabet_size);
  if (c.word.empty()) throw ParseError("cylinder word is empty");
  if (at != std::string_view::npos) {
    const std::string idx = strip_spaces(text.substr(at + 1));
    try {
      std::size_t used = 0;
      c.start = std::stoll(idx, &used);
      if (used != idx.size()) throw ParseError("bad cylinder start '" + idx + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad cylinder start '" + idx + "'");
    }
  }
  return c;
}

std::string Cylinder::to_string() const {
  return word_to_string(word) + "@" + std::to_string(start);
}

MixingGap mixing_gap(const SFT& x, const Cylinder& u, const Cylinder& v, long long n_max) {
  if (n_max < 1) throw DomainError("mixing_gap needs n_max >= 1");
  for (const Cylinder* c : {&u, &v}) {
    if (c->word.empty() || !word_admissible(c->word, x)) {
      throw DomainError("cylinder " + c->to_string() + " is not admissible");
    }
  }
  std::vector<BoolMat> reach = {BoolMat{}, x.adjacency()};  // reach[g] = A^g
  auto reachable = [&](std::size_t g, Symbol a, Symbol b) {
    while (reach.size() <= g) reach.push_back(bool_mul(reach.back(), x.adjacency()));
    return reach[g][a][b] != 0;
  };

  struct Segment {
    long long start;
    const Word* word;
  };
  MixingGap out;
  out.hits.resize(static_cast<std::size_t>(n_max) + 1);
  for (long long n = 0; n <= n_max; ++n) {
    // s in U with shift^n(s) in V: u.word at u.start, v.word at v.start + n
    Segment a{u.start, &u.word};
    Segment b{v.start + n, &v.word};
    if (b.start < a.start) std::swap(a, b);
    const long long a_end = a.start + static_cast<long long>(a.word->size());
    bool hit = false;
    if (b.start >= a_end) {
      hit = reachable(static_cast<std::size_t>(b.start - a_end + 1), a.word->back(),
                      b.word->front());
    } else {
      const long long b_end = b.start + static_cast<long long>(b.word->size());
      Word merged(static_cast<std::size_t>(std::max(a_end, b_end) - a.start));
      std::copy(a.word->begin(), a.word->end(), merged.begin());
      hit = true;
      for (std::size_t k = 0; k < b.word->size(); ++k) {
        const auto pos = static_cast<std::size_t>(b.start - a.start) + k;
        if (pos < a.word->size()) {
          hit = hit && merged[pos] == (*b.word)[k];
        } else {
          merged[pos] = (*b.word)[k];
        }
      }
      hit = hit && word_admissible(merged, x);
    }
    out.hits[static_cast<std::size_t>(n)] = hit;
  }
  if (out.hits.back()) {
    long long first = n_max;
    while (first > 1 && out.hits[static_cast<std::size_t>(first - 1)]) --first;
    out.n_star = first;
  }
  return out;
}

}  // namespace hyperdyn
