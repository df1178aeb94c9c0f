#pragma once

// Truncated power series in the deformation parameter, coefficients in a
// p-adic ring. Plain vectors, degree < M throughout.

#include "pk/padic.hpp"

namespace pk {

using LSeries = std::vector<Padic>;

inline LSeries ls_zero(const RingPtr& R, u32 M) { return LSeries(M, Padic::zero(R)); }

inline LSeries ls_const(const RingPtr& R, u32 M, const Padic& c) {
    LSeries s = ls_zero(R, M);
    s[0] = c;
    return s;
}

inline LSeries ls_add(const LSeries& x, const LSeries& y) {
    LSeries r = x;
    for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) r[i] = x[i] + y[i];
    return r;
}

inline LSeries ls_sub(const LSeries& x, const LSeries& y) {
    LSeries r = x;
    for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) r[i] = x[i] - y[i];
    return r;
}

inline LSeries ls_neg(const LSeries& x) {
    LSeries r = x;
    for (auto& c : r) c = -c;
    return r;
}

inline LSeries ls_mul(const LSeries& x, const LSeries& y, u32 M) {
    const RingPtr& R = x.empty() ? y[0].ring() : x[0].ring();
    LSeries r = ls_zero(R, M);
    for (size_t i = 0; i < x.size() && i < M; ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j + i < M && j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            r[i + j] += x[i] * y[j];
        }
    }
    return r;
}

// substitute Lambda -> Lambda^e (e >= 1), truncating at M
inline LSeries ls_power_subst(const LSeries& x, u32 e, u32 M) {
    LSeries r = ls_zero(x[0].ring(), M);
    for (size_t i = 0; i * e < M && i < x.size(); ++i) r[i * e] = x[i];
    return r;
}

inline Padic ls_eval(const LSeries& x, const Padic& at) {
    Padic r = Padic::zero(at.ring());
    for (size_t i = x.size(); i-- > 0;) r = r * at + x[i];
    return r;
}

// matrix of truncated series
using LSMatrix = std::vector<std::vector<LSeries>>;

inline LSMatrix lsm_mul(const LSMatrix& A, const LSMatrix& B, u32 M) {
    size_t n = A.size(), k = B.size(), m = B[0].size();
    const RingPtr& R = A[0][0][0].ring();
    LSMatrix C(n, std::vector<LSeries>(m, ls_zero(R, M)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t)
            for (size_t j = 0; j < m; ++j)
                C[i][j] = ls_add(C[i][j], ls_mul(A[i][t], B[t][j], M));
    return C;
}

}  // namespace pk
