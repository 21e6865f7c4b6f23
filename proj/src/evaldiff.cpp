#include "aromakit/evaldiff.hpp"

#include "aromakit/algebra.hpp"

#include <json.hpp>

#include <random>

namespace aromakit {

Polynomial Polynomial::monomial(int dim, Exponents e, const Rational& c) {
    Polynomial p(dim);
    e.resize(dim, 0);
    p.add(e, c);
    return p;
}

void Polynomial::add(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (auto& [e, c] : o.terms_) add(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (auto& [e, c] : o.terms_) add(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(a.dim_);
    Polynomial::Exponents e(a.dim_);
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.dim_; ++i) e[i] = ea[i] + eb[i];
            r.add(e, ca * cb);
        }
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial r(dim_);
    for (auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents e2 = e;
        e2[var] -= 1;
        r.add(e2, c * e[var]);
    }
    return r;
}

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : p.terms()) {
        if (!first) out += " + ";
        first = false;
        out += to_string(c);
        for (int i = 0; i < p.dim(); ++i) {
            if (e[i] == 0) continue;
            out += "*x" + std::to_string(i + 1);
            if (e[i] > 1) out += "^" + std::to_string(e[i]);
        }
    }
    return out;
}

Polynomial parse_polynomial(const std::string& text, int dim) {
    Polynomial p(dim);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    int sign = 1;
    skip_ws();
    while (pos < text.size()) {
        skip_ws();
        while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') sign = -sign;
            ++pos;
            skip_ws();
        }
        // term: [coefficient] factors
        Rational coeff = sign;
        sign = 1;
        bool have_any = false;
        Polynomial::Exponents e(dim, 0);
        bool expect_factor = true;
        while (pos < text.size() && expect_factor) {
            skip_ws();
            if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])))) {
                size_t start = pos;
                while (pos < text.size() &&
                       (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                    ++pos;
                coeff *= parse_rational(text.substr(start, pos - start));
                have_any = true;
            } else if (pos < text.size() && text[pos] == 'x') {
                ++pos;
                size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                int var = std::stoi(text.substr(start, pos - start));
                if (var < 1 || var > dim)
                    throw std::invalid_argument("polynomial: variable out of range");
                int exp = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    size_t s2 = pos;
                    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                        ++pos;
                    exp = std::stoi(text.substr(s2, pos - s2));
                }
                e[var - 1] += exp;
                have_any = true;
            } else {
                break;
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        if (!have_any) throw std::invalid_argument("polynomial: empty term in '" + text + "'");
        p.add(e, coeff);
        skip_ws();
        if (pos < text.size() && text[pos] != '+' && text[pos] != '-')
            throw std::invalid_argument("polynomial: unexpected character in '" + text + "'");
    }
    return p;
}

PolyVectorField field_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    PolyVectorField f;
    f.d = j.at("d").get<int>();
    if (f.d < 1) throw std::invalid_argument("field: d >= 1");
    for (auto& comp : j.at("components"))
        f.components.push_back(parse_polynomial(comp.get<std::string>(), f.d));
    if (static_cast<int>(f.components.size()) != f.d)
        throw std::invalid_argument("field: need d components");
    return f;
}

std::string field_to_json(const PolyVectorField& f) {
    nlohmann::json j;
    j["d"] = f.d;
    for (auto& c : f.components) j["components"].push_back(to_string(c));
    return j.dump();
}

Polynomial PolyTensor::component(const std::vector<int>& idx) const {
    auto it = comp_.find(idx);
    return it == comp_.end() ? Polynomial(d_) : it->second;
}

void PolyTensor::add(const std::vector<int>& idx, const Polynomial& p) {
    if (p.is_zero()) return;
    auto [it, fresh] = comp_.try_emplace(idx, p);
    if (!fresh) {
        it->second += p;
        if (it->second.is_zero()) comp_.erase(it);
    }
}

PolyTensor elementary_differential(const FormCombo& c, const PolyVectorField& f) {
    const int d = f.d;
    if (c.is_zero()) return PolyTensor(d, 0);
    auto [n, p] = c.grade();
    if (p != 0) throw std::invalid_argument("elementary_differential: needs p = 0");
    PolyTensor out(d, n);

    for (auto& [forest, coeff] : c.terms()) {
        const int N = forest.order();
        std::vector<std::vector<int>> preds(N);
        for (int v = 0; v < N; ++v) preds[v] = forest.predecessors(v);
        std::vector<int> idx(N, 0);
        while (true) {
            // product over vertices of the chosen partial derivatives
            Polynomial prod = Polynomial::monomial(d, {}, coeff);
            for (int v = 0; v < N && !prod.is_zero(); ++v) {
                Polynomial fv = f.components[idx[v]];
                for (int w : preds[v]) fv = fv.derivative(idx[w]);
                prod = prod * fv;
            }
            if (!prod.is_zero()) {
                std::vector<int> key(forest.num_roots());
                for (int i = 0; i < forest.num_roots(); ++i) key[i] = idx[forest.roots[i]];
                out.add(key, prod);
            }
            int i = N - 1;
            while (i >= 0 && ++idx[i] == d) idx[i--] = 0;
            if (i < 0) break;
        }
    }
    return out;
}

Polynomial divergence(const PolyTensor& t) {
    if (t.rank() != 1) throw std::invalid_argument("divergence: rank-1 tensor expected");
    Polynomial div(t.dim());
    for (auto& [idx, p] : t.components()) div += p.derivative(idx[0]);
    return div;
}

Polynomial divergence(const PolyVectorField& f) {
    Polynomial div(f.d);
    for (int i = 0; i < f.d; ++i) div += f.components[i].derivative(i);
    return div;
}

bool check_dH_identity(const FormCombo& gamma, const PolyVectorField& f) {
    PolyTensor lhs = elementary_differential(gamma, f);
    PolyTensor rhs = elementary_differential(dH(gamma), f);
    Polynomial want = rhs.component({});
    return divergence(lhs) == want;
}

namespace {

Polynomial random_poly(int d, int deg, std::mt19937_64& rng) {
    Polynomial p(d);
    std::uniform_int_distribution<int> coeff(-2, 2);
    Polynomial::Exponents e(d, 0);
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == d) {
            p.add(e, coeff(rng));
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            e[var] = k;
            self(self, var + 1, remaining - k);
        }
        e[var] = 0;
    };
    rec(rec, 0, deg);
    return p;
}

} // namespace

PolyVectorField random_field(int d, int deg, uint64_t seed) {
    std::mt19937_64 rng(seed);
    PolyVectorField f;
    f.d = d;
    for (int i = 0; i < d; ++i) f.components.push_back(random_poly(d, deg, rng));
    return f;
}

PolyVectorField random_divfree_field(int d, int deg, uint64_t seed) {
    if (d < 2) throw std::invalid_argument("random_divfree_field: d >= 2");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Polynomial>> A(d, std::vector<Polynomial>(d, Polynomial(d)));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            A[i][j] = random_poly(d, deg + 1, rng);
            A[j][i] = Polynomial(d) - A[i][j];
        }
    PolyVectorField f;
    f.d = d;
    for (int i = 0; i < d; ++i) {
        Polynomial fi(d);
        for (int j = 0; j < d; ++j) fi += A[i][j].derivative(j);
        f.components.push_back(std::move(fi));
    }
    if (!divergence(f).is_zero())
        throw std::logic_error("random_divfree_field: construction failed");
    return f;
}

bool check_solenoidal_numeric(const FormCombo& c, bool divfree, int trials, uint64_t seed) {
    if (c.is_zero()) return true;
    auto [n, p] = c.grade();
    if (n != 1 || p != 0) throw std::invalid_argument("check_solenoidal_numeric: needs Omega_1");
    FormCombo div = dH(c);
    for (int t = 0; t < trials; ++t) {
        PolyVectorField f = divfree ? random_divfree_field(3, 1 + t % 2, seed + t)
                                    : random_field(3, 1 + t % 2, seed + t);
        if (!elementary_differential(div, f).is_zero()) return false;
    }
    return true;
}

} // namespace aromakit
