#pragma once

#include <cstdint>
#include <map>

#include "aromakit/combo.hpp"

namespace aromakit {

// Multivariate polynomial in x1..xd with exact rational coefficients.
class Polynomial {
  public:
    using Exponents = std::vector<int>;

    explicit Polynomial(int dim) : dim_(dim) {}
    static Polynomial monomial(int dim, Exponents e, const Rational& c);

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    void add(const Exponents& e, const Rational& c);
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    Polynomial derivative(int var) const; // d/dx_{var+1}

  private:
    int dim_;
    std::map<Exponents, Rational> terms_;
};

std::string to_string(const Polynomial& p);
Polynomial parse_polynomial(const std::string& text, int dim);

struct PolyVectorField {
    int d = 0;
    std::vector<Polynomial> components; // f^1 .. f^d
};

// {"d": int, "components": ["...", ...]} with polynomials in x1..xd
PolyVectorField field_from_json(const std::string& json_text);
std::string field_to_json(const PolyVectorField& f);

// Tensor of rank n with polynomial entries indexed by {0..d-1}^n.
class PolyTensor {
  public:
    PolyTensor(int d, int rank) : d_(d), rank_(rank) {}
    int dim() const { return d_; }
    int rank() const { return rank_; }
    bool is_zero() const { return comp_.empty(); }
    const std::map<std::vector<int>, Polynomial>& components() const { return comp_; }
    Polynomial component(const std::vector<int>& idx) const;
    void add(const std::vector<int>& idx, const Polynomial& p);
    friend bool operator==(const PolyTensor& a, const PolyTensor& b) {
        return a.d_ == b.d_ && a.rank_ == b.rank_ && a.comp_ == b.comp_;
    }

  private:
    int d_, rank_;
    std::map<std::vector<int>, Polynomial> comp_;
};

// Elementary differential of a p = 0 combination on a concrete field:
// product over vertices of the partial derivatives selected by the
// predecessor indices, summed over the internal indices.
PolyTensor elementary_differential(const FormCombo& c, const PolyVectorField& f);

Polynomial divergence(const PolyTensor& t); // rank 1 only
Polynomial divergence(const PolyVectorField& f);

// Div F(gamma)(f) = F(d_H gamma)(f), exactly.
bool check_dH_identity(const FormCombo& gamma, const PolyVectorField& f);

// general polynomial field with small random integer coefficients
PolyVectorField random_field(int d, int deg, uint64_t seed);

// f^i = sum_j d_j A^{ij} with A antisymmetric random of degree deg+1;
// exactly divergence-free by construction (and verified).
PolyVectorField random_divfree_field(int d, int deg, uint64_t seed);

// F(d_H c)(f) == 0 on `trials` random fields (divergence-free if asked).
bool check_solenoidal_numeric(const FormCombo& c, bool divfree, int trials,
                              uint64_t seed = 20240811);

} // namespace aromakit
