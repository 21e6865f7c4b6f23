#include "aromakit/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace aromakit {

void SparseRationalMatrix::add(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseRationalMatrix::add");
    if (v == 0) return;
    Row& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
        it->second += v;
        if (it->second == 0) row.erase(it);
    } else {
        row.insert(it, {c, v});
    }
}

Rational SparseRationalMatrix::at(int r, int c) const {
    const Row& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? it->second : Rational(0);
}

SparseRationalMatrix SparseRationalMatrix::transpose() const {
    SparseRationalMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
}

SparseRationalMatrix SparseRationalMatrix::hstack(const SparseRationalMatrix& a,
                                                  const SparseRationalMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    SparseRationalMatrix m(a.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        m.data_[r] = a.data_[r];
        for (auto& [c, v] : b.data_[r]) m.data_[r].emplace_back(c + a.cols(), v);
    }
    return m;
}

namespace {

using Row = SparseRationalMatrix::Row;

// scale to a primitive integer vector (positive leading entry)
void normalize(Row& row, Rational& rhs) {
    if (row.empty()) {
        if (rhs != 0) rhs = 1;
        return;
    }
    Integer lcm = 1, gcd = 0;
    auto fold = [&](const Rational& v) {
        lcm = boost::multiprecision::lcm(lcm, denominator(v));
    };
    for (auto& [c, v] : row) fold(v);
    fold(rhs);
    for (auto& [c, v] : row) {
        v *= lcm;
        gcd = boost::multiprecision::gcd(gcd, numerator(v));
    }
    rhs *= lcm;
    if (gcd == 0) gcd = 1;
    if (row.front().second < 0) gcd = -gcd;
    for (auto& [c, v] : row) v /= gcd;
    rhs /= gcd;
}

// eliminate the leading entry of dst against src: cross-multiplied
// difference, content removed afterwards, so rows stay integral
void eliminate(Row& dst, Rational& dst_rhs, const Row& src, const Rational& src_rhs) {
    const Rational a = src.front().second;
    const Rational b = dst.front().second;
    Row out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.emplace_back(dst[i].first, a * dst[i].second);
            ++i;
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -b * src[j].second);
            ++j;
        } else {
            Rational v = a * dst[i].second - b * src[j].second;
            if (v != 0) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
    dst_rhs = a * dst_rhs - b * src_rhs;
    normalize(dst, dst_rhs);
}

} // namespace

Echelon echelon(const SparseRationalMatrix& m, const std::vector<Rational>* rhs0) {
    std::vector<Row> work;
    std::vector<Rational> rhs;
    for (int r = 0; r < m.rows(); ++r) {
        Row row = m.row(r);
        Rational b = rhs0 ? (*rhs0)[r] : Rational(0);
        normalize(row, b);
        if (!row.empty() || b != 0) {
            work.push_back(std::move(row));
            rhs.push_back(std::move(b));
        }
    }

    Echelon e;
    // process leading columns left to right; the shortest row pivots
    std::map<int, std::vector<size_t>> by_lead;
    auto lead_of = [&](size_t i) { return work[i].empty() ? m.cols() : work[i].front().first; };
    for (size_t i = 0; i < work.size(); ++i) by_lead[lead_of(i)].push_back(i);

    while (!by_lead.empty()) {
        auto it = by_lead.begin();
        int col = it->first;
        std::vector<size_t> rows_here = std::move(it->second);
        by_lead.erase(it);
        if (col == m.cols()) {
            for (size_t i : rows_here)
                if (rhs[i] != 0) {
                    // inconsistent system: emit the marker row and stop
                    e.rows.push_back({});
                    e.pivot_cols.push_back(m.cols());
                    e.rhs.push_back(1);
                    return e;
                }
            continue;
        }
        size_t piv = rows_here[0];
        for (size_t i : rows_here)
            if (work[i].size() < work[piv].size() ||
                (work[i].size() == work[piv].size() && i < piv))
                piv = i;
        for (size_t i : rows_here) {
            if (i == piv) continue;
            eliminate(work[i], rhs[i], work[piv], rhs[piv]);
            int l = lead_of(i);
            if (l < m.cols() || rhs[i] != 0) by_lead[l].push_back(i);
        }
        e.rows.push_back(std::move(work[piv]));
        e.rhs.push_back(rhs[piv]);
        e.pivot_cols.push_back(col);
        ++e.rank;
    }
    return e;
}

int rank(const SparseRationalMatrix& m) { return echelon(m).rank; }

std::vector<std::vector<Rational>> kernel(const SparseRationalMatrix& m) {
    Echelon e = echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivot_cols)
        if (c < m.cols()) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> x(m.cols(), Rational(0));
        x[free] = 1;
        for (int i = static_cast<int>(e.rows.size()) - 1; i >= 0; --i) {
            const Row& row = e.rows[i];
            if (row.empty()) continue;
            int pc = e.pivot_cols[i];
            Rational s = 0;
            for (auto& [c, v] : row)
                if (c != pc && x[c] != 0) s += v * x[c];
            x[pc] = -s / row.front().second;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const SparseRationalMatrix& m,
                                           const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: size");
    Echelon e = echelon(m, &b);
    for (size_t i = 0; i < e.rows.size(); ++i)
        if (e.pivot_cols[i] == m.cols()) return std::nullopt;
    std::vector<Rational> x(m.cols(), Rational(0));
    for (int i = static_cast<int>(e.rows.size()) - 1; i >= 0; --i) {
        const Row& row = e.rows[i];
        int pc = e.pivot_cols[i];
        Rational s = e.rhs[i];
        for (auto& [c, v] : row)
            if (c != pc && x[c] != 0) s -= v * x[c];
        x[pc] = s / row.front().second;
    }
    return x;
}

} // namespace aromakit
