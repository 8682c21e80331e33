#pragma once

// Generator alphabets and word syntax shared by every other module.
//
// Two alphabets are supported:
//   pi:    v0 h3 s2      (s = sigma)
//   two_v: A0 B1 C2 p1 P0  (p = pi, P = pi-bar)
// A trailing `^-1` marks an inverse.  The involutions s/p/P never carry a
// sign internally; parsing a negative power of one normalizes it away.

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace brin2v {

enum class Alphabet : std::uint8_t { pi, two_v };

enum class Kind : std::uint8_t { v, h, sigma, A, B, C, pi, pibar };

inline Alphabet alphabet_of(Kind k) {
  switch (k) {
    case Kind::v:
    case Kind::h:
    case Kind::sigma: return Alphabet::pi;
    default: return Alphabet::two_v;
  }
}

inline bool is_involution(Kind k) {
  return k == Kind::sigma || k == Kind::pi || k == Kind::pibar;
}

struct Generator {
  Kind kind;
  std::uint32_t index = 0;
  int sign = +1;  // involutions always stored with +1

  Generator() : kind(Kind::v) {}
  Generator(Kind k, std::uint32_t i, int s = +1) : kind(k), index(i), sign(s) {
    if (is_involution(kind)) sign = +1;
  }

  Generator inverse() const {
    Generator g = *this;
    if (!is_involution(kind)) g.sign = -sign;
    return g;
  }

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline char token_char(Kind k) {
  switch (k) {
    case Kind::v: return 'v';
    case Kind::h: return 'h';
    case Kind::sigma: return 's';
    case Kind::A: return 'A';
    case Kind::B: return 'B';
    case Kind::C: return 'C';
    case Kind::pi: return 'p';
    case Kind::pibar: return 'P';
  }
  return '?';
}

inline std::optional<Kind> kind_of_char(char c) {
  switch (c) {
    case 'v': return Kind::v;
    case 'h': return Kind::h;
    case 's': return Kind::sigma;
    case 'A': return Kind::A;
    case 'B': return Kind::B;
    case 'C': return Kind::C;
    case 'p': return Kind::pi;
    case 'P': return Kind::pibar;
  }
  return std::nullopt;
}

struct Word {
  Alphabet alphabet = Alphabet::pi;
  std::vector<Generator> letters;

  Word() = default;
  explicit Word(Alphabet a) : alphabet(a) {}
  Word(Alphabet a, std::vector<Generator> ls) : alphabet(a), letters(std::move(ls)) {}

  bool monoid_positive() const {
    for (const auto& g : letters)
      if (g.sign < 0) return false;
    return true;
  }

  Word inverse() const {
    Word w(alphabet);
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back(it->inverse());
    return w;
  }

  Word operator*(const Word& rhs) const {
    if (alphabet != rhs.alphabet)
      throw std::invalid_argument("cannot concatenate words over different alphabets");
    Word w = *this;
    w.letters.insert(w.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return w;
  }

  friend bool operator==(const Word&, const Word&) = default;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (token #" + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline Word parse_word(std::string_view text, Alphabet alphabet) {
  Word w(alphabet);
  std::size_t pos = 0;  // 1-based token position for diagnostics
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view tok = text.substr(start, i - start);
    ++pos;

    if (tok == "1" && w.letters.empty() && pos == 1) {
      // the empty word prints as "1"; accept it back
      std::size_t rest = i;
      while (rest < text.size() && std::isspace(static_cast<unsigned char>(text[rest]))) ++rest;
      if (rest >= text.size()) return w;
    }

    int sign = +1;
    if (tok.size() >= 3 && tok.substr(tok.size() - 3) == "^-1") {
      sign = -1;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (tok.empty()) throw parse_error("empty token", pos);
    auto kind = kind_of_char(tok[0]);
    if (!kind) throw parse_error("unknown token '" + std::string(tok) + "'", pos);
    if (alphabet_of(*kind) != alphabet)
      throw parse_error("mixed alphabets: token '" + std::string(tok) + "' does not belong to the " +
                            (alphabet == Alphabet::pi ? std::string("pi") : std::string("2v")) +
                            " alphabet",
                        pos);
    std::string_view digits = tok.substr(1);
    if (digits.empty()) throw parse_error("missing index in '" + std::string(tok) + "'", pos);
    std::uint64_t index = 0;
    for (char c : digits) {
      if (c < '0' || c > '9')
        throw parse_error("malformed index in '" + std::string(tok) + "'", pos);
      index = index * 10 + static_cast<std::uint64_t>(c - '0');
      if (index > 0xffffffffULL)
        throw parse_error("index out of range in '" + std::string(tok) + "'", pos);
    }
    w.letters.emplace_back(*kind, static_cast<std::uint32_t>(index), sign);
  }
  return w;
}

inline std::string print_word(const Word& w) {
  if (w.letters.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& g : w.letters) {
    if (!first) out << ' ';
    first = false;
    out << token_char(g.kind) << g.index;
    if (g.sign < 0) out << "^-1";
  }
  return out.str();
}

// Deletes adjacent g g^-1 / g^-1 g pairs and adjacent equal involution
// letters until none remain.  The result represents the same group element.
inline Word free_reduce(const Word& w) {
  Word out(w.alphabet);
  for (const auto& g : w.letters) {
    if (!out.letters.empty()) {
      const Generator& prev = out.letters.back();
      bool cancels = false;
      if (is_involution(g.kind)) {
        cancels = prev.kind == g.kind && prev.index == g.index;
      } else {
        cancels = prev.kind == g.kind && prev.index == g.index && prev.sign == -g.sign;
      }
      if (cancels) {
        out.letters.pop_back();
        continue;
      }
    }
    out.letters.push_back(g);
  }
  return out;
}

// Convenience builders used throughout the tests and the generator tables.
inline Generator gv(std::uint32_t i, int s = +1) { return Generator(Kind::v, i, s); }
inline Generator gh(std::uint32_t i, int s = +1) { return Generator(Kind::h, i, s); }
inline Generator gs(std::uint32_t i) { return Generator(Kind::sigma, i); }
inline Generator gA(std::uint32_t i, int s = +1) { return Generator(Kind::A, i, s); }
inline Generator gB(std::uint32_t i, int s = +1) { return Generator(Kind::B, i, s); }
inline Generator gC(std::uint32_t i, int s = +1) { return Generator(Kind::C, i, s); }
inline Generator gp(std::uint32_t i) { return Generator(Kind::pi, i); }
inline Generator gP(std::uint32_t i) { return Generator(Kind::pibar, i); }

inline Word pi_word(std::initializer_list<Generator> ls) {
  return Word(Alphabet::pi, std::vector<Generator>(ls));
}
inline Word tv_word(std::initializer_list<Generator> ls) {
  return Word(Alphabet::two_v, std::vector<Generator>(ls));
}

}  // namespace brin2v
