#pragma once

#include <map>
#include <string>

#include "aromakit/forest.hpp"
#include "aromakit/rational.hpp"

namespace aromakit {

// Exact linear combination of canonical forests.  Zero coefficients are never
// stored.  FormCombo carries elements of Omega_{n,p} (plain forests);
// MarkedCombo is the same container used for marked/detached intermediates of
// the Euler-operator calculus.
class FormCombo {
  public:
    using Terms = std::map<Forest, Rational>;

    FormCombo() = default;
    explicit FormCombo(const Forest& f, const Rational& c = 1) { add(f, c); }

    void add(const Forest& f, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(f, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    Rational coeff(const Forest& f) const {
        auto it = terms_.find(f);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    FormCombo& operator+=(const FormCombo& o) {
        for (auto& [f, c] : o.terms_) add(f, c);
        return *this;
    }
    FormCombo& operator-=(const FormCombo& o) {
        for (auto& [f, c] : o.terms_) add(f, -c);
        return *this;
    }
    FormCombo& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [f, v] : terms_) v *= c;
        return *this;
    }

    friend FormCombo operator+(FormCombo a, const FormCombo& b) { return a += b; }
    friend FormCombo operator-(FormCombo a, const FormCombo& b) { return a -= b; }
    friend FormCombo operator*(const Rational& c, FormCombo a) { return a *= c; }
    friend FormCombo operator-(FormCombo a) { return a *= -1; }
    friend bool operator==(const FormCombo& a, const FormCombo& b) {
        return a.terms_ == b.terms_;
    }

    // homogeneous piece of order N
    FormCombo graded(int N) const {
        FormCombo out;
        for (auto& [f, c] : terms_)
            if (f.order() == N) out.add(f, c);
        return out;
    }

    int max_order() const {
        int m = 0;
        for (auto& [f, c] : terms_) m = std::max(m, f.order());
        return m;
    }

    // common (n, p) of all terms; throws on mixed grades
    std::pair<int, int> grade() const;

  private:
    Terms terms_;
};

using MarkedCombo = FormCombo;

// `coeff * forest` terms joined by ` + `, canonical term order; "0" if empty.
std::string to_string(const FormCombo& c);

// accepts the to_string format, plain forests, and `-` signs on coefficients
FormCombo parse_combo(const std::string& text);

// JSON array of {"forest": string, "coeff": string} records, canonical order
std::string to_json(const FormCombo& c);
FormCombo combo_from_json(const std::string& text);

} // namespace aromakit
