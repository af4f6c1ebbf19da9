#include "arithdyn/padic.hpp"

#include "arithdyn/errors.hpp"

namespace arithdyn {

PadicField::PadicField(Int p, int digits) : p_(std::move(p)), digits_(digits) {
  ppow_.resize(digits_ + 1);
  ppow_[0] = 1;
  for (int i = 1; i <= digits_; ++i) ppow_[i] = ppow_[i - 1] * p_;
}

Int PadicField::pow_p(int k) const { return ppow_[std::min(k, digits_)]; }

PadicField::Val PadicField::make(long ord, Int unit, int known) const {
  known = std::min(known, digits_);
  if (known <= 0) throw PrecisionExhausted("p-adic precision exhausted");
  unit %= pow_p(known);
  if (unit < 0) unit += pow_p(known);
  if (unit == 0) {
    // zero to precision: value divisible by p^(ord + known)
    return Val{ord + known, Int(0), digits_, true};
  }
  // strip p factors that crept in
  while (unit % p_ == 0) {
    unit /= p_;
    ++ord;
    --known;
    if (known <= 0) throw PrecisionExhausted("p-adic precision exhausted");
  }
  return Val{ord, std::move(unit), known, false};
}

PadicField::Val PadicField::from_rat(const Rat& x) const {
  if (x == 0) return Val{kZeroOrd, Int(0), digits_, true};
  Int num(x.get_num()), den(x.get_den());
  long o = 0;
  while (num % p_ == 0) { num /= p_; ++o; }
  while (den % p_ == 0) { den /= p_; --o; }
  Int m = pow_p(digits_);
  Int dinv;
  if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::logic_error("padic: denominator not invertible");
  Int u = (num % m) * dinv % m;
  if (u < 0) u += m;
  return make(o, std::move(u), digits_);
}

PadicField::Val PadicField::neg(const Val& a) const {
  if (a.zero) return a;
  return make(a.ord, pow_p(a.known) - a.unit, a.known);
}

PadicField::Val PadicField::add(const Val& a, const Val& b) const {
  if (a.zero && b.zero) return Val{std::min(a.ord, b.ord), Int(0), digits_, true};
  if (a.zero) {
    // b + O(p^a.ord): b known mod p^(b.ord + b.known) and perturbed at p^a.ord
    if (a.ord >= b.ord + b.known) return b;
    int known = static_cast<int>(a.ord - b.ord);
    return make(b.ord, b.unit, known);
  }
  if (b.zero) return add(b, a);
  long o = std::min(a.ord, b.ord);
  // both values known mod p^(ord_i + known_i)
  long prec_abs = std::min(a.ord + a.known, b.ord + b.known);
  int known = static_cast<int>(prec_abs - o);
  known = std::min(known, digits_);
  Int m = pow_p(known);
  Int ua = (a.ord - o) >= known ? Int(0) : (a.unit * pow_p(static_cast<int>(a.ord - o))) % m;
  Int ub = (b.ord - o) >= known ? Int(0) : (b.unit * pow_p(static_cast<int>(b.ord - o))) % m;
  return make(o, ua + ub, known);
}

PadicField::Val PadicField::sub(const Val& a, const Val& b) const { return add(a, neg(b)); }

PadicField::Val PadicField::mul(const Val& a, const Val& b) const {
  if (a.zero || b.zero) {
    // |product| <= p^-(a.ord + b.ord) with the zero side's ord a lower bound
    long o = std::min(a.ord, kZeroOrd)            // cap to avoid overflow
                 + std::min(b.ord, kZeroOrd);
    return Val{std::min(o, kZeroOrd), Int(0), digits_, true};
  }
  int known = std::min(a.known, b.known);
  return make(a.ord + b.ord, a.unit * b.unit, known);
}

PadicField::Val PadicField::scale(const Val& a, const Rat& s) const {
  if (s == 0) return zero();
  return mul(a, from_rat(s));
}

PadicField::Val PadicField::eval_poly(const Poly& f, const Val& x) const {
  Val r = zero();
  for (size_t i = f.coeffs().size(); i-- > 0;) {
    r = mul(r, x);
    if (f[i] != 0) r = add(r, from_rat(f[i]));
  }
  return r;
}

long PadicField::ord(const Val& a) const {
  if (a.zero) throw PrecisionExhausted("ord of zero-to-precision p-adic value");
  return a.ord;
}

}  // namespace arithdyn
