#include "spherequant/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <utility>

#include "spherequant/format.hpp"

namespace sq {

namespace {

constexpr int kMaxExponent = 64;
constexpr double kPi = 3.14159265358979323846;

double powi(double base, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

cplx powi(cplx base, int e) {
  cplx r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

void check_site(int sites, int site, const char* op) {
  if (site < 1 || site > sites) {
    throw std::invalid_argument(std::string(op) + ": site " + std::to_string(site) +
                                " out of range 1.." + std::to_string(sites));
  }
}

void check_same_sites(const SitePolynomial& a, const SitePolynomial& b, const char* op) {
  if (a.sites() != b.sites()) {
    throw std::invalid_argument(std::string(op) + ": site count mismatch (" +
                                std::to_string(a.sites()) + " vs " + std::to_string(b.sites()) +
                                ")");
  }
}

}  // namespace

SitePolynomial::SitePolynomial(int sites) : sites_(sites) {
  if (sites < 1) throw std::invalid_argument("SitePolynomial: sites must be >= 1");
}

SitePolynomial SitePolynomial::constant(int sites, cplx value) {
  SitePolynomial p(sites);
  p.add_term(Monomial(sites, SiteExponents{0, 0, 0}), value);
  return p;
}

SitePolynomial SitePolynomial::coordinate(int sites, int site, int axis) {
  SitePolynomial p(sites);
  check_site(sites, site, "coordinate");
  if (axis < 0 || axis > 2) throw std::invalid_argument("coordinate: axis must be 0, 1 or 2");
  Monomial m(sites, SiteExponents{0, 0, 0});
  m[site - 1][axis] = 1;
  p.add_term(std::move(m), 1.0);
  return p;
}

int SitePolynomial::total_degree() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (const auto& e : m) d += e[0] + e[1] + e[2];
    deg = std::max(deg, d);
  }
  return deg;
}

int SitePolynomial::site_degree(int site) const {
  check_site(sites_, site, "site_degree");
  int deg = 0;
  for (const auto& [m, c] : terms_) {
    const auto& e = m[site - 1];
    deg = std::max(deg, e[0] + e[1] + e[2]);
  }
  return deg;
}

void SitePolynomial::add_term(Monomial m, cplx coeff) {
  if (static_cast<int>(m.size()) != sites_) {
    throw std::invalid_argument("add_term: monomial length does not match site count");
  }
  if (coeff == cplx(0.0, 0.0)) return;
  // Reduce z-degrees below 2 via z^2 = 1 - x^2 - y^2, site by site.
  std::vector<std::pair<Monomial, cplx>> work;
  work.emplace_back(std::move(m), coeff);
  while (!work.empty()) {
    auto [mono, c] = std::move(work.back());
    work.pop_back();
    int hot = -1;
    for (int j = 0; j < sites_; ++j) {
      if (mono[j][2] >= 2) {
        hot = j;
        break;
      }
    }
    if (hot < 0) {
      auto it = terms_.find(mono);
      if (it == terms_.end()) {
        terms_.emplace(std::move(mono), c);
      } else {
        it->second += c;
        if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
      }
      continue;
    }
    Monomial base = mono;
    base[hot][2] -= 2;
    work.emplace_back(base, c);
    Monomial mx = base;
    mx[hot][0] += 2;
    work.emplace_back(std::move(mx), -c);
    Monomial my = base;
    my[hot][1] += 2;
    work.emplace_back(std::move(my), -c);
  }
}

SitePolynomial SitePolynomial::conjugated() const {
  SitePolynomial out(sites_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, std::conj(c));
  return out;
}

SitePolynomial& SitePolynomial::operator+=(const SitePolynomial& rhs) {
  check_same_sites(*this, rhs, "operator+=");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

SitePolynomial& SitePolynomial::operator-=(const SitePolynomial& rhs) {
  check_same_sites(*this, rhs, "operator-=");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

SitePolynomial& SitePolynomial::operator*=(cplx s) {
  if (s == cplx(0.0, 0.0)) {
    *this = SitePolynomial(sites_);
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

SitePolynomial operator+(SitePolynomial a, const SitePolynomial& b) { return a += b; }
SitePolynomial operator-(SitePolynomial a, const SitePolynomial& b) { return a -= b; }
SitePolynomial operator*(cplx s, SitePolynomial a) { return a *= s; }

SitePolynomial operator*(const SitePolynomial& a, const SitePolynomial& b) {
  check_same_sites(a, b, "operator*");
  SitePolynomial out(a.sites());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m(a.sites());
      for (int j = 0; j < a.sites(); ++j) {
        m[j] = SiteExponents{ma[j][0] + mb[j][0], ma[j][1] + mb[j][1], ma[j][2] + mb[j][2]};
      }
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

bool approx_equal(const SitePolynomial& a, const SitePolynomial& b, double tol) {
  if (a.sites() != b.sites()) return false;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
      if (std::abs(ia->second) > tol) return false;
      ++ia;
    } else if (ia == a.terms().end() || ib->first < ia->first) {
      if (std::abs(ib->second) > tol) return false;
      ++ib;
    } else {
      if (std::abs(ia->second - ib->second) > tol) return false;
      ++ia;
      ++ib;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
public:
  Parser(std::string_view text, int sites) : text_(text), sites_(sites) {}

  SitePolynomial run() {
    SitePolynomial p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

private:
  std::string_view text_;
  int sites_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char ch) {
    if (peek() == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  SitePolynomial parse_expr() {
    SitePolynomial acc = parse_term();
    for (;;) {
      if (accept('+')) {
        acc += parse_term();
      } else if (accept('-')) {
        acc -= parse_term();
      } else {
        return acc;
      }
    }
  }

  SitePolynomial parse_term() {
    SitePolynomial acc = parse_factor();
    while (accept('*')) acc = acc * parse_factor();
    return acc;
  }

  SitePolynomial parse_factor() {
    const char ch = peek();
    if (ch == '\0') fail("expected factor, found end of input");
    if (ch == '-') {
      ++pos_;
      return cplx(-1.0) * parse_factor();
    }
    if (ch == '(') {
      ++pos_;
      SitePolynomial inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (ch == 'i') {
      ++pos_;
      return SitePolynomial::constant(sites_, cplx(0.0, 1.0));
    }
    if (ch == 'x' || ch == 'y' || ch == 'z') {
      ++pos_;
      const int axis = ch == 'x' ? 0 : (ch == 'y' ? 1 : 2);
      const int site = parse_uint("site index after variable name");
      if (site < 1) fail("site index must be >= 1");
      if (site > sites_) {
        fail("site index " + std::to_string(site) + " exceeds " + std::to_string(sites_));
      }
      int exponent = 1;
      if (accept('^')) {
        exponent = parse_uint("exponent after '^'");
        if (exponent > kMaxExponent) {
          fail("exponent " + std::to_string(exponent) + " exceeds " +
               std::to_string(kMaxExponent));
        }
      }
      SitePolynomial p(sites_);
      Monomial m(sites_, SiteExponents{0, 0, 0});
      m[site - 1][axis] = exponent;
      p.add_term(std::move(m), 1.0);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      return SitePolynomial::constant(sites_, parse_number());
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  int parse_uint(const char* what) {
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(std::string("expected ") + what);
    }
    int value = 0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{}) fail(std::string("invalid ") + what);
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return value;
  }

  double parse_number() {
    std::size_t end = pos_;
    while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) ++end;
    // optional exponent part
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
        ++e;
        while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
        end = e;
      }
    }
    double value = 0.0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + end, value);
    if (res.ec != std::errc{} || res.ptr == text_.data() + pos_) fail("invalid number literal");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return value;
  }
};

std::string monomial_string(const Monomial& m) {
  static const char axis_names[3] = {'x', 'y', 'z'};
  std::string out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (int axis = 0; axis < 3; ++axis) {
      const int e = m[j][axis];
      if (e == 0) continue;
      if (!out.empty()) out += '*';
      out += axis_names[axis];
      out += std::to_string(j + 1);
      if (e > 1) {
        out += '^';
        out += std::to_string(e);
      }
    }
  }
  return out;
}

struct TermText {
  bool negative;
  std::string body;
};

TermText term_string(const Monomial& m, cplx c) {
  const std::string mono = monomial_string(m);
  const double re = c.real();
  const double im = c.imag();
  std::string coeff;
  bool negative = false;
  if (im == 0.0) {
    negative = std::signbit(re);
    const double mag = negative ? -re : re;
    if (mag == 1.0 && !mono.empty()) {
      coeff.clear();
    } else {
      coeff = format_double(mag);
    }
  } else if (re == 0.0) {
    negative = std::signbit(im);
    const double mag = negative ? -im : im;
    coeff = (mag == 1.0) ? "i" : format_double(mag) + "*i";
  } else {
    coeff = "(" + format_double(re) + (std::signbit(im) ? "-" : "+") +
            format_double(std::abs(im)) + "*i)";
  }
  std::string body;
  if (mono.empty()) {
    body = coeff.empty() ? "1" : coeff;
  } else if (coeff.empty()) {
    body = mono;
  } else {
    body = coeff + "*" + mono;
  }
  return {negative, body};
}

}  // namespace

SitePolynomial parse_poly(std::string_view text, int sites) {
  if (sites < 1) throw std::invalid_argument("parse_poly: sites must be >= 1");
  return Parser(text, sites).run();
}

std::string to_string(const SitePolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const TermText t = term_string(m, c);
    if (first) {
      if (t.negative) out += '-';
      out += t.body;
      first = false;
    } else {
      out += t.negative ? " - " : " + ";
      out += t.body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// calculus

SitePolynomial derivative(const SitePolynomial& p, int site, int axis) {
  check_site(p.sites(), site, "derivative");
  if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis must be 0, 1 or 2");
  SitePolynomial out(p.sites());
  for (const auto& [m, c] : p.terms()) {
    const int e = m[site - 1][axis];
    if (e == 0) continue;
    Monomial d = m;
    d[site - 1][axis] = e - 1;
    out.add_term(std::move(d), c * static_cast<double>(e));
  }
  return out;
}

namespace {

// sum_{abc} eps_{abc} x_c df_a dg_b restricted to one site, all other sites
// treated as constants.
SitePolynomial site_bracket(const SitePolynomial& f, const SitePolynomial& g, int site) {
  SitePolynomial out(f.sites());
  static constexpr int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& [a, b, c] : cyc) {
    const SitePolynomial xc = SitePolynomial::coordinate(f.sites(), site, c);
    out += xc * (derivative(f, site, a) * derivative(g, site, b) -
                 derivative(f, site, b) * derivative(g, site, a));
  }
  return out;
}

}  // namespace

SitePolynomial poisson_bracket_single(const SitePolynomial& f, const SitePolynomial& g) {
  if (f.sites() != 1 || g.sites() != 1) {
    throw std::invalid_argument("poisson_bracket_single: both arguments must live on one site");
  }
  return site_bracket(f, g, 1);
}

SitePolynomial poisson_bracket_tensor(const SitePolynomial& f, const SitePolynomial& g) {
  check_same_sites(f, g, "poisson_bracket_tensor");
  SitePolynomial out(f.sites());
  for (int j = 1; j <= f.sites(); ++j) out += site_bracket(f, g, j);
  return out;
}

cplx evaluate(const SitePolynomial& p, const std::vector<SphereAngles>& angles) {
  if (static_cast<int>(angles.size()) != p.sites()) {
    throw std::invalid_argument("evaluate: angle count does not match site count");
  }
  std::vector<std::array<double, 3>> pts(angles.size());
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const double st = std::sin(angles[j].theta);
    pts[j] = {st * std::cos(angles[j].phi), st * std::sin(angles[j].phi),
              std::cos(angles[j].theta)};
  }
  return evaluate_cartesian(p, pts);
}

cplx evaluate_cartesian(const SitePolynomial& p, const std::vector<std::array<double, 3>>& points) {
  if (static_cast<int>(points.size()) != p.sites()) {
    throw std::invalid_argument("evaluate_cartesian: point count does not match site count");
  }
  cplx acc = 0.0;
  for (const auto& [m, c] : p.terms()) {
    double v = 1.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      v *= powi(points[j][0], m[j][0]) * powi(points[j][1], m[j][1]) * powi(points[j][2], m[j][2]);
    }
    acc += c * v;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// sup norm

namespace {

struct FlatTerm {
  std::vector<SiteExponents> exps;
  cplx coeff;
};

double abs_value(const std::vector<FlatTerm>& terms,
                 const std::vector<std::array<double, 3>>& pts) {
  cplx acc = 0.0;
  for (const FlatTerm& t : terms) {
    double v = 1.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      v *= powi(pts[j][0], t.exps[j][0]) * powi(pts[j][1], t.exps[j][1]) *
           powi(pts[j][2], t.exps[j][2]);
    }
    acc += t.coeff * v;
  }
  return std::abs(acc);
}

double abs_at_angles(const std::vector<FlatTerm>& terms, const std::vector<double>& angles) {
  const std::size_t d = angles.size() / 2;
  std::vector<std::array<double, 3>> pts(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double st = std::sin(angles[2 * j]);
    pts[j] = {st * std::cos(angles[2 * j + 1]), st * std::sin(angles[2 * j + 1]),
              std::cos(angles[2 * j])};
  }
  return abs_value(terms, pts);
}

// golden-section maximization of a unimodal-near-peak 1d slice
double golden_max(const std::function<double(double)>& f, double lo, double hi, double& arg) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 60; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc > fd) {
    arg = c;
    return fc;
  }
  arg = d;
  return fd;
}

}  // namespace

double sup_norm(const SitePolynomial& p) {
  const int d = p.sites();
  if (d > 4) throw std::invalid_argument("sup_norm: sites > 4 not supported");
  if (p.is_zero()) return 0.0;

  std::vector<FlatTerm> terms;
  terms.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) terms.push_back({m, c});

  // Per-site resolution; the full product grid is scanned, so it shrinks
  // with the number of sites.
  int n_theta = 48, n_phi = 96;
  if (d == 3) {
    n_theta = 12;
    n_phi = 24;
  } else if (d == 4) {
    n_theta = 8;
    n_phi = 16;
  }

  const std::size_t per_site = static_cast<std::size_t>(n_theta) * n_phi;
  std::vector<double> site_theta(per_site), site_phi(per_site);
  for (int it = 0; it < n_theta; ++it) {
    // midpoints avoid the degenerate poles
    const double theta = kPi * (it + 0.5) / n_theta;
    for (int ip = 0; ip < n_phi; ++ip) {
      site_theta[it * n_phi + ip] = theta;
      site_phi[it * n_phi + ip] = 2.0 * kPi * ip / n_phi;
    }
  }

  // scan the product grid, keeping the best 20 seeds
  constexpr std::size_t kSeeds = 20;
  std::vector<std::pair<double, std::vector<double>>> best;  // (value, flat angles)
  std::vector<std::size_t> index(d, 0);
  std::vector<double> angles(2 * d);
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= per_site;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int j = 0; j < d; ++j) {
      index[j] = rem % per_site;
      rem /= per_site;
      angles[2 * j] = site_theta[index[j]];
      angles[2 * j + 1] = site_phi[index[j]];
    }
    const double v = abs_at_angles(terms, angles);
    if (best.size() < kSeeds) {
      best.emplace_back(v, angles);
      if (best.size() == kSeeds) {
        std::sort(best.begin(), best.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
      }
    } else if (v > best.back().first) {
      best.back() = {v, angles};
      std::sort(best.begin(), best.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
    }
  }

  const double h_theta = kPi / n_theta;
  const double h_phi = 2.0 * kPi / n_phi;
  double global_best = 0.0;
  for (auto& [seed_value, seed] : best) {
    std::vector<double> cur = seed;
    double value = seed_value;
    for (int pass = 0; pass < 60; ++pass) {
      const double before = value;
      for (int k = 0; k < 2 * d; ++k) {
        const double h = (k % 2 == 0) ? h_theta : h_phi;
        auto slice = [&](double u) {
          std::vector<double> probe = cur;
          probe[k] = u;
          return abs_at_angles(terms, probe);
        };
        double arg = cur[k];
        const double v = golden_max(slice, cur[k] - h, cur[k] + h, arg);
        if (v > value) {
          value = v;
          cur[k] = arg;
        }
      }
      if (value - before <= 1e-13 * (1.0 + value)) break;
    }
    global_best = std::max(global_best, value);
  }
  return global_best;
}

SitePolynomial scale_coordinates(const SitePolynomial& p, int two_j) {
  if (two_j < 1) throw std::invalid_argument("scale_coordinates: two_j must be >= 1");
  const double jp1 = 0.5 * two_j + 1.0;
  SitePolynomial out(p.sites());
  for (const auto& [m, c] : p.terms()) {
    double factor = 1.0;
    for (const auto& e : m) factor *= powi(jp1, e[0] + e[1] + e[2]);
    out.add_term(m, c * factor);
  }
  return out;
}

}  // namespace sq
