#include "fakesurf/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "fakesurf/algebra.hpp"

namespace fakesurf {

namespace {

std::vector<std::string> default_names(int k) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i)
    names.push_back(k <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  return names;
}

Relator inverse(const Relator& w) {
  Relator out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

} // namespace

Presentation::Presentation(int generators, std::vector<Relator> relators, std::vector<std::string> names)
    : names_(names.empty() ? default_names(generators) : std::move(names)), relators_(std::move(relators)) {
  if (static_cast<int>(names_.size()) != generators) throw std::invalid_argument("generator name count mismatch");
  for (const auto& r : relators_)
    for (int x : r)
      if (x == 0 || std::abs(x) > generators)
        throw std::invalid_argument("relator letter " + std::to_string(x) + " out of range");
}

std::vector<int> Presentation::occurrences() const {
  std::vector<int> n(names_.size(), 0);
  for (const auto& r : relators_)
    for (int x : r) ++n[static_cast<std::size_t>(std::abs(x) - 1)];
  return n;
}

int Presentation::total_length() const {
  int total = 0;
  for (const auto& r : relators_) total += static_cast<int>(r.size());
  return total;
}

PresentationSyntaxError::PresentationSyntaxError(std::size_t position, const std::string& what)
    : std::runtime_error("column " + std::to_string(position + 1) + ": " + what), position_(position) {}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  Presentation run() {
    std::vector<std::string> names;
    skip();
    if (peek() != '|') {
      while (true) {
        std::size_t at = pos_;
        std::string name = read_name();
        if (std::isupper(static_cast<unsigned char>(name[0])))
          throw PresentationSyntaxError(at, "generator names must be lowercase: " + name);
        if (std::find(names.begin(), names.end(), name) != names.end())
          throw PresentationSyntaxError(at, "duplicate generator " + name);
        names.push_back(name);
        skip();
        if (peek() == ',') {
          ++pos_;
          skip();
          continue;
        }
        break;
      }
    }
    expect('|');
    names_ = names;
    std::vector<Relator> relators;
    skip();
    if (pos_ < s_.size()) {
      while (true) {
        relators.push_back(read_word(false));
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    skip();
    if (pos_ != s_.size()) throw PresentationSyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    const int k = static_cast<int>(names.size());
    return Presentation(k, std::move(relators), std::move(names));
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) throw PresentationSyntaxError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string read_name() {
    if (!std::isalpha(static_cast<unsigned char>(peek()))) throw PresentationSyntaxError(pos_, "expected a generator name");
    std::size_t start = pos_++;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  int read_int() {
    skip();
    std::size_t start = pos_;
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++pos_;
      skip();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw PresentationSyntaxError(pos_, "expected an exponent");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000000) throw PresentationSyntaxError(start, "exponent too large");
    }
    return static_cast<int>(neg ? -v : v);
  }

  Relator power(const Relator& w, int n) {
    Relator base = n < 0 ? inverse(w) : w;
    Relator out;
    for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
  }

  // Sequence of factors up to ',', ')' or end.
  Relator read_word(bool nested) {
    Relator out;
    skip();
    if (peek() == '1') {
      ++pos_;
      return out;
    }
    bool any = false;
    while (true) {
      skip();
      char c = peek();
      if (c == '\0' || c == ',' || c == ')') break;
      Relator atom;
      if (c == '(') {
        ++pos_;
        atom = read_word(true);
        expect(')');
      } else {
        std::size_t at = pos_;
        std::string name = read_name();
        bool inv = std::isupper(static_cast<unsigned char>(name[0]));
        name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) throw PresentationSyntaxError(at, "unknown generator " + name);
        int g = static_cast<int>(it - names_.begin()) + 1;
        atom = {inv ? -g : g};
      }
      skip();
      if (peek() == '^') {
        ++pos_;
        atom = power(atom, read_int());
      }
      out.insert(out.end(), atom.begin(), atom.end());
      any = true;
    }
    if (!any && !nested) throw PresentationSyntaxError(pos_, "empty relator (write 1)");
    return out;
  }
};

} // namespace

Presentation parse_presentation(std::string_view text) { return Parser(text).run(); }

std::string to_string(const Presentation& p) {
  std::string out;
  const auto& names = p.names();
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  out += "|";
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    if (r) out += ",";
    const Relator& w = p.relators()[r];
    if (w.empty()) out += "1";
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      const std::string& name = names[static_cast<std::size_t>(std::abs(w[i]) - 1)];
      std::size_t run = j - i;
      if (run == 1 && w[i] > 0) {
        out += name;
      } else if (run == 1) {
        std::string up = name;
        up[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(up[0])));
        out += up;
      } else {
        out += name + "^" + (w[i] < 0 ? "-" : "") + std::to_string(run);
      }
      i = j;
    }
  }
  return out;
}

// ------------------------------------------------------------ from surfaces

Presentation presentation_of(const Skeleton& s, const WordList& disks, const std::vector<int>& tree) {
  std::vector<int> label(static_cast<std::size_t>(s.edge_count()), 0);
  int k = 0;
  for (int e = 0; e < s.edge_count(); ++e)
    if (std::find(tree.begin(), tree.end(), e) == tree.end()) label[static_cast<std::size_t>(e)] = ++k;
  std::vector<Relator> relators;
  for (const auto& w : disks) {
    Relator r;
    for (int letter : w) {
      int g = label[static_cast<std::size_t>(std::abs(letter) - 1)];
      if (g) r.push_back(letter > 0 ? g : -g);
    }
    relators.push_back(std::move(r));
  }
  return Presentation(k, std::move(relators));
}

Presentation presentation_of(const FakeSurface& f) {
  return presentation_of(*f.skeleton, f.disks, spanning_tree(*f.skeleton));
}

// ----------------------------------------------------------------- Tietze

namespace {

bool gen_less(int a, int b) {
  int aa = std::abs(a), bb = std::abs(b);
  if (aa != bb) return aa < bb;
  return a > b;
}

void free_reduce(Relator& w) {
  Relator out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  std::size_t a = 0, b = out.size();
  while (b - a >= 2 && out[a] == -out[b - 1]) {
    ++a;
    --b;
  }
  w.assign(out.begin() + static_cast<std::ptrdiff_t>(a), out.begin() + static_cast<std::ptrdiff_t>(b));
}

// Least rotation of w or its inverse.
Relator cyclic_min(const Relator& w) {
  Relator best = w;
  const std::size_t n = w.size();
  Relator inv = inverse(w);
  for (const Relator* src : {&w, static_cast<const Relator*>(&inv)})
    for (std::size_t r = 0; r < n; ++r) {
      Relator cand(n);
      for (std::size_t i = 0; i < n; ++i) cand[i] = (*src)[(r + i) % n];
      if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end(), gen_less))
        best = std::move(cand);
    }
  return best;
}

bool relator_less(const Relator& a, const Relator& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), gen_less);
}

struct Work {
  std::vector<std::string> names;
  std::vector<Relator> rels;

  int total() const {
    int t = 0;
    for (const auto& r : rels) t += static_cast<int>(r.size());
    return t;
  }

  void normalize() {
    for (auto& r : rels) {
      free_reduce(r);
      r = cyclic_min(r);
    }
    std::erase_if(rels, [](const Relator& r) { return r.empty(); });
    std::sort(rels.begin(), rels.end(), relator_less);
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
  }

  // Solve some relator for a generator it contains once and substitute.
  bool eliminate() {
    const int L = total();
    const int k = static_cast<int>(names.size());
    int best_r = -1, best_g = 0, best_total = 0;
    for (int g = 1; g <= k; ++g) {
      int everywhere = 0;
      for (const auto& r : rels)
        for (int x : r)
          if (std::abs(x) == g) ++everywhere;
      for (std::size_t i = 0; i < rels.size(); ++i) {
        int here = 0;
        for (int x : rels[i])
          if (std::abs(x) == g) ++here;
        if (here != 1) continue;
        int len = static_cast<int>(rels[i].size());
        int after = L - len - (everywhere - 1) + (everywhere - 1) * (len - 1);
        if (best_r < 0 || after < best_total) {
          best_r = static_cast<int>(i);
          best_g = g;
          best_total = after;
        }
      }
    }
    // Allow moderate growth: every elimination removes a generator.
    if (best_r < 0 || best_total > std::max(2 * L, L + 32)) return false;

    Relator r = rels[static_cast<std::size_t>(best_r)];
    std::size_t at = 0;
    while (std::abs(r[at]) != best_g) ++at;
    std::rotate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(at), r.end());
    // r = g^e w  =>  g = w^-1 (e = 1) or g = w (e = -1).
    Relator w(r.begin() + 1, r.end());
    Relator value = r[0] > 0 ? inverse(w) : w;
    Relator value_inv = inverse(value);

    rels.erase(rels.begin() + best_r);
    for (auto& rel : rels) {
      Relator out;
      for (int x : rel) {
        if (x == best_g)
          out.insert(out.end(), value.begin(), value.end());
        else if (x == -best_g)
          out.insert(out.end(), value_inv.begin(), value_inv.end());
        else
          out.push_back(x);
      }
      rel = std::move(out);
    }
    for (auto& rel : rels)
      for (int& x : rel)
        if (std::abs(x) > best_g) x += x > 0 ? -1 : 1;
    names.erase(names.begin() + (best_g - 1));
    return true;
  }

  // Replace a long piece u of some relator by the shorter v^-1 when another
  // relator reads u v cyclically.
  bool shorten() {
    for (std::size_t j = 0; j < rels.size(); ++j) {
      const Relator& s = rels[j];
      const std::size_t m = s.size();
      std::vector<Relator> forms;
      Relator sinv = inverse(s);
      for (const Relator* src : {&s, static_cast<const Relator*>(&sinv)})
        for (std::size_t rot = 0; rot < m; ++rot) {
          Relator c(m);
          for (std::size_t q = 0; q < m; ++q) c[q] = (*src)[(rot + q) % m];
          forms.push_back(std::move(c));
        }
      for (std::size_t p = m; 2 * p > m; --p) {
        for (std::size_t i = 0; i < rels.size(); ++i) {
          if (i == j) continue;
          Relator& r = rels[i];
          const std::size_t n = r.size();
          if (p > n) continue;
          for (const Relator& form : forms) {
            for (std::size_t start = 0; start < n; ++start) {
              bool match = true;
              for (std::size_t q = 0; q < p && match; ++q) match = r[(start + q) % n] == form[q];
              if (!match) continue;
              Relator repl = inverse(Relator(form.begin() + static_cast<std::ptrdiff_t>(p), form.end()));
              for (std::size_t q = p; q < n; ++q) repl.push_back(r[(start + q) % n]);
              r = std::move(repl);
              return true;
            }
          }
        }
      }
    }
    return false;
  }
};

} // namespace

Presentation tietze_simplify(const Presentation& p) {
  Work w{p.names(), p.relators()};
  while (true) {
    w.normalize();
    if (w.eliminate()) continue;
    if (w.shorten()) continue;
    break;
  }
  const int k = static_cast<int>(w.names.size());
  return Presentation(k, std::move(w.rels), std::move(w.names));
}

// ------------------------------------------------------------ complexity

long long bp_complexity(const Presentation& p) {
  if (p.generator_count() == 0) throw std::domain_error("presentation has no generators");
  std::vector<int> n = p.occurrences();
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] < 2)
      throw std::domain_error("generator " + p.names()[i] + " occurs " + std::to_string(n[i]) +
                              " time(s); at least 2 required");
  long long L = p.total_length();
  long long k = p.generator_count();
  long long top = *std::max_element(n.begin(), n.end());
  return 2 * L - 4 * k - top + 2;
}

} // namespace fakesurf
