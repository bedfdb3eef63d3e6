#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coalbase {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct arith_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class scalar_domain { boolean, natural, integer, rational, gaussian_rational };

inline const char* domain_name(scalar_domain d) {
  switch (d) {
    case scalar_domain::boolean: return "boolean";
    case scalar_domain::natural: return "natural";
    case scalar_domain::integer: return "integer";
    case scalar_domain::rational: return "rational";
    case scalar_domain::gaussian_rational: return "gaussian_rational";
  }
  return "?";
}

inline std::optional<scalar_domain> domain_from_name(std::string_view s) {
  if (s == "boolean") return scalar_domain::boolean;
  if (s == "natural") return scalar_domain::natural;
  if (s == "integer") return scalar_domain::integer;
  if (s == "rational") return scalar_domain::rational;
  if (s == "gaussian_rational") return scalar_domain::gaussian_rational;
  return std::nullopt;
}

inline bool domain_has_involution(scalar_domain d) {
  return d == scalar_domain::gaussian_rational;
}
inline bool domain_has_negation(scalar_domain d) {
  return d == scalar_domain::integer || d == scalar_domain::rational ||
         d == scalar_domain::gaussian_rational;
}
inline bool domain_is_field(scalar_domain d) {
  return d == scalar_domain::rational || d == scalar_domain::gaussian_rational;
}

// An exact semiring element.  Boolean uses (or, and); the numeric domains sit
// inside Q(i) with per-domain membership enforced on construction.  mpq_class
// keeps rationals in lowest terms with positive denominator, so structural
// equality is value equality.
class scalar {
 public:
  scalar() : dom_(scalar_domain::rational) {}

  static scalar boolean(bool v) {
    scalar s;
    s.dom_ = scalar_domain::boolean;
    s.b_ = v;
    return s;
  }

  static scalar make(scalar_domain dom, mpq_class re, mpq_class im = 0) {
    if (dom == scalar_domain::boolean)
      throw domain_error("boolean scalar cannot be built from rationals");
    re.canonicalize();
    im.canonicalize();
    if (dom != scalar_domain::gaussian_rational && im != 0)
      throw domain_error("imaginary part outside domain " + std::string(domain_name(dom)));
    if ((dom == scalar_domain::natural || dom == scalar_domain::integer) &&
        re.get_den() != 1)
      throw domain_error("non-integer value outside domain " + std::string(domain_name(dom)));
    if (dom == scalar_domain::natural && re < 0)
      throw domain_error("negative value outside natural domain");
    scalar s;
    s.dom_ = dom;
    s.re_ = re;
    s.im_ = im;
    return s;
  }

  static scalar from_int(scalar_domain dom, long v) {
    if (dom == scalar_domain::boolean) return boolean(v != 0);
    return make(dom, mpq_class(v));
  }

  static scalar zero(scalar_domain dom) { return from_int(dom, 0); }
  static scalar one(scalar_domain dom) { return from_int(dom, 1); }
  static scalar imaginary_unit() {
    return make(scalar_domain::gaussian_rational, 0, 1);
  }

  scalar_domain domain() const { return dom_; }
  bool bool_value() const {
    require_domain(scalar_domain::boolean);
    return b_;
  }
  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const {
    return dom_ == scalar_domain::boolean ? !b_ : (re_ == 0 && im_ == 0);
  }
  bool is_one() const {
    return dom_ == scalar_domain::boolean ? b_ : (re_ == 1 && im_ == 0);
  }

  bool operator==(const scalar& o) const {
    return dom_ == o.dom_ && b_ == o.b_ && re_ == o.re_ && im_ == o.im_;
  }
  bool operator!=(const scalar& o) const { return !(*this == o); }

  // Total order for canonical sorting of supports; not a semantic order.
  bool operator<(const scalar& o) const {
    if (dom_ != o.dom_) return dom_ < o.dom_;
    if (dom_ == scalar_domain::boolean) return b_ < o.b_;
    if (re_ != o.re_) return re_ < o.re_;
    return im_ < o.im_;
  }

  friend scalar add(const scalar& a, const scalar& b) {
    a.require_same(b);
    if (a.dom_ == scalar_domain::boolean) return boolean(a.b_ || b.b_);
    return make_unchecked(a.dom_, a.re_ + b.re_, a.im_ + b.im_);
  }

  friend scalar mul(const scalar& a, const scalar& b) {
    a.require_same(b);
    if (a.dom_ == scalar_domain::boolean) return boolean(a.b_ && b.b_);
    return make_unchecked(a.dom_, a.re_ * b.re_ - a.im_ * b.im_,
                          a.re_ * b.im_ + a.im_ * b.re_);
  }

  friend scalar neg(const scalar& a) {
    if (!domain_has_negation(a.dom_))
      throw arith_error(std::string("negation unsupported in domain ") +
                        domain_name(a.dom_));
    return make_unchecked(a.dom_, -a.re_, -a.im_);
  }

  friend scalar sub(const scalar& a, const scalar& b) { return add(a, neg(b)); }

  friend scalar inv(const scalar& a) {
    if (!domain_is_field(a.dom_))
      throw arith_error(std::string("inverse unsupported in domain ") +
                        domain_name(a.dom_));
    if (a.is_zero()) throw arith_error("inverse of zero");
    mpq_class n = a.re_ * a.re_ + a.im_ * a.im_;
    return make_unchecked(a.dom_, a.re_ / n, -a.im_ / n);
  }

  friend scalar conj(const scalar& a) {
    if (!domain_has_involution(a.dom_))
      throw arith_error(std::string("conjugation unsupported in domain ") +
                        domain_name(a.dom_));
    return make_unchecked(a.dom_, a.re_, -a.im_);
  }

  // Canonical text per the input grammar; parse(str()) == *this.
  std::string str() const {
    if (dom_ == scalar_domain::boolean) return b_ ? "true" : "false";
    if (dom_ != scalar_domain::gaussian_rational || im_ == 0)
      return re_.get_str();
    std::string im_part = mpq_class(abs(im_)).get_str() + "i";
    if (re_ == 0) return (im_ < 0 ? "-" : "") + im_part;
    return re_.get_str() + (im_ < 0 ? "-" : "+") + im_part;
  }

  static scalar parse(std::string_view text, scalar_domain dom);

 private:
  static scalar make_unchecked(scalar_domain dom, mpq_class re, mpq_class im) {
    // arithmetic stays inside each domain except natural subtraction,
    // which is routed through neg() and rejected there
    if (dom == scalar_domain::natural && re < 0)
      throw arith_error("operation left the natural domain");
    scalar s;
    s.dom_ = dom;
    s.re_ = std::move(re);
    s.im_ = std::move(im);
    s.re_.canonicalize();
    s.im_.canonicalize();
    return s;
  }

  void require_domain(scalar_domain d) const {
    if (dom_ != d)
      throw domain_error(std::string("expected domain ") + domain_name(d) +
                         ", got " + domain_name(dom_));
  }
  void require_same(const scalar& o) const {
    if (dom_ != o.dom_)
      throw domain_error(std::string("domain mismatch: ") + domain_name(dom_) +
                         " vs " + domain_name(o.dom_));
  }

  scalar_domain dom_;
  bool b_ = false;
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

namespace detail {

// rational token: [-]?d+(/d+)?
inline std::optional<mpq_class> scan_rational(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  std::size_t i = pos;
  if (i < s.size() && s[i] == '-') ++i;
  std::size_t digits = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == digits) return std::nullopt;
  if (i < s.size() && s[i] == '/') {
    std::size_t j = i + 1;
    std::size_t den = j;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    if (j == den) return std::nullopt;
    i = j;
  }
  mpq_class q;
  if (q.set_str(std::string(s.substr(start, i - start)), 10) != 0)
    return std::nullopt;
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  pos = i;
  return q;
}

}  // namespace detail

inline scalar scalar::parse(std::string_view text, scalar_domain dom) {
  if (dom == scalar_domain::boolean) {
    if (text == "true") return boolean(true);
    if (text == "false") return boolean(false);
    throw parse_error("malformed boolean: '" + std::string(text) + "'");
  }
  std::size_t pos = 0;
  auto first = detail::scan_rational(text, pos);
  if (!first) throw parse_error("malformed scalar: '" + std::string(text) + "'");
  if (pos == text.size()) {
    try {
      return make(dom, *first);
    } catch (const domain_error& e) {
      throw parse_error(std::string(e.what()) + ": '" + std::string(text) + "'");
    }
  }
  if (dom != scalar_domain::gaussian_rational)
    throw parse_error("trailing input in '" + std::string(text) + "' for domain " +
                      domain_name(dom));
  // <rat>i | <rat>[+|-]<rat>i
  if (text[pos] == 'i' && pos + 1 == text.size()) return make(dom, 0, *first);
  int sign = 0;
  if (text[pos] == '+') sign = 1;
  else if (text[pos] == '-') sign = -1;
  std::size_t ipos = pos;
  if (sign != 0) ++ipos;
  auto second = detail::scan_rational(text, ipos);
  if (!second || ipos >= text.size() || text[ipos] != 'i' || ipos + 1 != text.size())
    throw parse_error("malformed gaussian rational: '" + std::string(text) + "'");
  mpq_class im = (sign == -1) ? mpq_class(-*second) : *second;
  return make(dom, *first, im);
}

enum class scalar_op { add, mul, neg, inv, conj };

inline std::optional<scalar_op> scalar_op_from_name(std::string_view s) {
  if (s == "add") return scalar_op::add;
  if (s == "mul") return scalar_op::mul;
  if (s == "neg") return scalar_op::neg;
  if (s == "inv") return scalar_op::inv;
  if (s == "conj") return scalar_op::conj;
  return std::nullopt;
}

inline scalar scalar_arith(scalar_op op, const scalar& a,
                           const scalar* b = nullptr) {
  switch (op) {
    case scalar_op::add:
      if (!b) throw arith_error("add needs two operands");
      return add(a, *b);
    case scalar_op::mul:
      if (!b) throw arith_error("mul needs two operands");
      return mul(a, *b);
    case scalar_op::neg: return neg(a);
    case scalar_op::inv: return inv(a);
    case scalar_op::conj: return conj(a);
  }
  throw arith_error("unknown op");
}

}  // namespace coalbase
