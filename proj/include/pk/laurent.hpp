#pragma once

// pi-shifted ring elements: value = pi^shift * u with u in R_d. Used where
// exact division by powers of p or pi must not lose precision (slope roots,
// beta_j = q^{-j d} pi_j, pairings with p in the denominator).

#include "pk/padic.hpp"

namespace pk {

struct Laurent {
    Padic u;
    int shift = 0;  // power of pi

    Laurent() = default;
    explicit Laurent(Padic x, int sh = 0) : u(std::move(x)), shift(sh) {}
    static Laurent zero(const RingPtr& R) { return Laurent(Padic::zero(R)); }
    static Laurent one(const RingPtr& R) { return Laurent(Padic::one(R)); }

    const RingPtr& ring() const { return u.ring(); }
    bool is_zero() const { return u.is_zero(); }

    // total pi-order (ORD_INF if zero at precision)
    int ord_pi() const {
        int o = u.ord_pi();
        return o == ORD_INF ? ORD_INF : o + shift;
    }

    // pull the pi-content of u into the shift
    Laurent normalized() const {
        if (u.is_zero()) return *this;
        int o = u.ord_pi();
        if (o <= 0) return *this;
        return Laurent(u.div_pi_pow_exact((u32)o), shift + o);
    }

    Laurent operator*(const Laurent& o) const { return Laurent(u * o.u, shift + o.shift); }
    Laurent operator-() const { return Laurent(-u, shift); }

    Laurent operator+(const Laurent& o) const {
        if (u.is_zero()) return o;
        if (o.u.is_zero()) return *this;
        int s = std::min(shift, o.shift);
        Padic x = u.mul_pi_pow((u32)(shift - s));
        Padic y = o.u.mul_pi_pow((u32)(o.shift - s));
        return Laurent(x + y, s);
    }
    Laurent operator-(const Laurent& o) const { return *this + (-o); }

    Laurent inv() const {
        Laurent n = normalized();
        if (n.u.is_zero() || n.u.ord_pi() != 0) throw DivisionByNonUnit("Laurent::inv");
        return Laurent(n.u.inv(), -n.shift);
    }
    Laurent operator/(const Laurent& o) const { return *this * o.inv(); }

    // the element pi^{-shift-floor} ... for reporting: as Padic when shift >= 0
    Padic to_padic() const {
        if (shift < 0) {
            Laurent n = normalized();
            if (n.shift < 0) throw DivisionByNonUnit("Laurent with negative pi-order");
            return n.u.mul_pi_pow((u32)n.shift);
        }
        return u.mul_pi_pow((u32)shift);
    }
};

// ord_pi(x - y), useful as "agree mod pi^T"
inline int laurent_diff_ord(const Laurent& x, const Laurent& y) { return (x - y).ord_pi(); }

// Hensel/Newton iteration for a simple root. poly given by coefficients
// (constant first). Seeds must satisfy |f(x0)| < |f'(x0)|^2; quadratic
// convergence, result exact mod pi^{prec - 2 loss} with loss = ord f'(root).
struct NewtonResult {
    Laurent root;
    int loss_ord_pi = 0;   // ord_pi f'(root)
    int residual_ord = 0;  // ord_pi f(root), ORD_INF if exact at precision
};

inline Laurent poly_eval(const std::vector<Laurent>& f, const Laurent& x) {
    Laurent r = Laurent::zero(x.ring());
    for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
    return r;
}

inline std::vector<Laurent> poly_derivative(const std::vector<Laurent>& f) {
    std::vector<Laurent> d;
    for (size_t i = 1; i < f.size(); ++i) {
        Laurent c = f[i];
        c.u = c.u.scaled((u64)i);
        d.push_back(c);
    }
    return d;
}

inline NewtonResult newton_root(const std::vector<Laurent>& f, Laurent x0, int max_iter = 64) {
    auto df = poly_derivative(f);
    const RingPtr& R = x0.ring();
    int cap = (int)((R->p - 1) * R->N);
    Laurent x = x0.normalized();
    int prev_ord = -1000;
    for (int it = 0; it < max_iter; ++it) {
        Laurent fx = poly_eval(f, x);
        Laurent dfx = poly_eval(df, x);
        int fo = fx.ord_pi();
        int dfo = dfx.ord_pi();
        if (dfo == ORD_INF) throw NoConvergence("newton_root: derivative vanishes");
        if (fo == ORD_INF || fo >= cap - 2 * dfo) {
            NewtonResult res;
            res.root = x.normalized();
            res.loss_ord_pi = dfo;
            res.residual_ord = fo;
            return res;
        }
        if (fo <= 2 * dfo && it > 0 && fo <= prev_ord)
            throw NoConvergence("newton_root: no progress");
        prev_ord = fo;
        x = (x - fx / dfx).normalized();
    }
    throw NoConvergence("newton_root: iteration budget exhausted");
}

}  // namespace pk
