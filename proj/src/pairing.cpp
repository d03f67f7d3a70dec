#include "qmanin/pairing.hpp"

namespace qmanin {

Pairing::Pairing(const QGroup& g) : g_(g), words_(g.rd(), QVPow{}) {}

QScalar Pairing::tau_mono(const Mono& x, const Mono& y) const {
  if (top_letter(x.f) >= 0 || top_letter(y.e) >= 0) throw DomainError("tau: argument outside U^{>=0} x U^{<=0}");
  const RootDatum& rd = g_.rd();
  if (x.e != y.f) return 0;
  // stored K_l E^m = q^{(l, wt m)} E^m K_l; the closed form is stated for E^m K_l against F^n K_m
  int s = rd.bil_d(x.k, rd.weight_of(x.e)) - rd.bil_d(x.k, y.k);
  QScalar r = g_.vpow(s);
  for (int k = 0; k < g_.N(); ++k) {
    int m = x.e[k];
    if (!m) continue;
    int eb = g_.d() * rd.beta_d[k];
    QScalar qb = g_.vpow(eb);
    QScalar f = QScalar(qfact_v(m, eb)) * g_.vpow(eb * m * (m - 1) / 2) / (qb - qb.inverse()).pow(m);
    r *= (m % 2) ? -f : f;
  }
  return r;
}

QScalar Pairing::tau_closed(const UElem& x, const UElem& y) const {
  QScalar r = 0;
  for (const auto& [mx, cx] : x.t)
    for (const auto& [my, cy] : y.t) {
      QScalar t = tau_mono(mx, my);
      if (!t.is_zero()) r += cx * cy * t;
    }
  return r;
}

QScalar Pairing::tau_recursive(const UElem& x, const UElem& y) const {
  const RootDatum& rd = g_.rd();
  QScalar r = 0;
  for (const auto& [mx, cx] : x.t) {
    if (top_letter(mx.f) >= 0) throw DomainError("tau: first argument outside U^{>=0}");
    for (const auto& [my, cy] : y.t) {
      if (top_letter(my.e) >= 0) throw DomainError("tau: second argument outside U^{<=0}");
      if (rd.weight_of(mx.e) != rd.weight_of(my.f)) continue;
      // K_l E-word = q^{(l, wt)} E-word K_l, and tau(E-word K_l, F-word K_m) = q^{-(l,m)} tau(words)
      QScalar pre = cx * cy * g_.vpow(rd.bil_d(mx.k, rd.weight_of(mx.e)) - rd.bil_d(mx.k, my.k));
      for (const auto& [we, ce] : g_.plus().expand(mx.e))
        for (const auto& [wf, cf] : g_.minus().expand(my.f)) {
          QScalar t = words_(we, wf);
          if (!t.is_zero()) r += pre * ce * cf * t;
        }
    }
  }
  return r;
}

// E^m K_mu F^n = q^{-(g,g)} E^m K_{mu-g} S(Y) with Y = K_{-g} S^{-1}(F^n) in U^-, g = wt F^n.
const std::tuple<QScalar, Weight, Exps, UElem>& Pairing::split(const Mono& ekf) const {
  auto it = split_.find(ekf);
  if (it != split_.end()) return it->second;
  const RootDatum& rd = g_.rd();
  Weight gam = rd.weight_of(ekf.f);
  UElem y = g_.mul(g_.K(-gam), g_.antipode_inv(g_.mono(Mono{ekf.f, {}, {}})));
  for (const auto& [m, c] : y.t)
    if (!is_zero(m.k) || top_letter(m.e) >= 0) throw StructuralError("sigma: S^{-1} of an F-monomial left U^-");
  auto val = std::make_tuple(g_.vpow(-rd.bil_d(gam, gam)), ekf.k - gam, ekf.e, y);
  return split_.emplace(ekf, std::move(val)).first->second;
}

QScalar Pairing::sigma_mono(const Mono& ekf, const VMono& v) const {
  auto key = std::make_pair(ekf, v);
  auto it = sigma_.find(key);
  if (it != sigma_.end()) return it->second;
  const RootDatum& rd = g_.rd();
  const auto& [pre, k0, eplus, yminus] = split(ekf);
  // v = Y^y Z_l X^x = q^{(l, wt x)} Y^y X^x Z_l
  QScalar r = pre * g_.vpow(rd.bil_d(v.z, rd.weight_of(v.x)));
  r *= tau_mono(Mono{{}, {}, eplus}, Mono{v.y, {}, {}});
  if (!r.is_zero()) r *= g_.vpow(rd.bil_d(k0, v.z));  // tau(K_k0, K_{-l}) = q^{(k0,l)}
  if (!r.is_zero()) r *= tau_closed(g_.mono(Mono{{}, {}, v.x}), yminus);
  return sigma_[key] = r;
}

QScalar Pairing::sigma(const UElem& u, const VElem& v) const {
  QScalar r = 0;
  UElem ekf = g_.to_ekf(u);
  for (const auto& [mu, cu] : ekf.t)
    for (const auto& [mv, cv] : v.t) {
      QScalar s = sigma_mono(mu, mv);
      if (!s.is_zero()) r += cu * cv * s;
    }
  return r;
}

}  // namespace qmanin
