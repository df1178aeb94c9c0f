#pragma once

// Finite field tower F_p c F_q c F_{q^m}: absolute representation
// F_{p^k} = F_p[t]/(u(t)) with the same defining modulus as the unramified
// p-adic tower, plus closed-point enumeration for G_m/F_q.

#include <memory>
#include <optional>
#include <vector>

#include "pk/ffpoly.hpp"
#include "pk/util.hpp"

namespace pk {

struct FField;
using FFieldPtr = std::shared_ptr<const FField>;

// element: coefficient vector of length deg (constant first)
using FFElt = std::vector<u32>;

struct FField {
    u32 p = 5;
    u32 deg = 1;
    FpPoly modulus;  // monic of degree deg
    u64 card = 1;    // p^deg

    static FFieldPtr make(u32 p, u32 deg, FpPoly modulus = {});

    FFElt zero() const { return FFElt(deg, 0); }
    FFElt one() const {
        FFElt e(deg, 0);
        e[0] = 1 % p;
        return e;
    }
    FFElt from_u32(u32 v) const {
        FFElt e(deg, 0);
        e[0] = v % p;
        return e;
    }
    bool is_zero(const FFElt& x) const {
        for (u32 v : x)
            if (v) return false;
        return true;
    }
    FFElt add(const FFElt& x, const FFElt& y) const;
    FFElt sub(const FFElt& x, const FFElt& y) const;
    FFElt neg(const FFElt& x) const;
    FFElt mul(const FFElt& x, const FFElt& y) const;
    FFElt inv(const FFElt& x) const;
    FFElt pow(FFElt x, u64 e) const;
    FFElt frobenius(const FFElt& x) const { return pow(x, p); }

    u64 encode(const FFElt& x) const;   // sum x_i p^i
    FFElt decode(u64 code) const;
    u32 trace_to_prime(const FFElt& x) const;  // absolute trace into F_p
};

// log/exp/trace tables for the counting loops
struct FFTables {
    FFieldPtr F;
    u64 L = 0;                      // group order card-1
    std::vector<u32> log_of;        // by encode; undefined at 0
    std::vector<u64> exp_of;        // exp_of[l] = encode(g^l)
    std::vector<u32> trace_by_log;  // trace(g^l)
    u64 gen_code = 0;

    static FFTables build(const FFieldPtr& F);
};

// polynomials over F_q (q = p^a), coefficients as FFElt of the q-field
using FqPoly = std::vector<FFElt>;

struct FieldDescriptor {
    u32 p = 5;
    u32 a = 1;
    u32 m = 1;  // extension degree over F_q
    FpPoly modulus;  // absolute modulus of F_{q^m} over F_p (degree a*m)
};

struct ClosedPoint {
    u32 q = 5;   // p^a
    u32 d = 1;   // degree over F_q
    FqPoly min_poly;       // monic, degree d, constant term nonzero
    FFieldPtr res_field;   // F_{q^d}, absolute over F_p
    FFElt representative;  // a root of min_poly in res_field

    u64 coeff_code(u32 a_deg) const;  // lex key over (c_0..c_{d-1}) encodings
};

// embedding of F_{p^s} into F_{p^t} (s | t): image of the generator t'
struct Embedding {
    FFieldPtr src, dst;
    FFElt gen_image;  // root of src->modulus in dst, smallest encoding
    FFElt map(const FFElt& x) const;
    static Embedding find(const FFieldPtr& src, const FFieldPtr& dst);
};

// exactly one point per Frobenius orbit of bar F_q^*, degree <= D;
// ordered by degree then lexicographic min_poly coefficients
std::vector<ClosedPoint> enumerate_closed_points(u32 p, u32 a, u32 D);

// residue field data: descriptor for F_{q^d}, representative, and the
// residue polynomial feeding teichmueller_lift
struct ResidueData {
    FieldDescriptor field;
    FFElt lambda_bar;
    FpPoly residue_poly;  // lambda_bar as F_p-polynomial coefficients
};
ResidueData residue_data(const ClosedPoint& pt);

std::string closed_point_json(const ClosedPoint& pt);

}  // namespace pk
