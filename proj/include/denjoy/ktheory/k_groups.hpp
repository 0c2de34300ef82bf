#pragma once

// K-groups of C(T) x| Z^d by the Pimsner-Voiculescu recursion.
//
// A_0 = C(T) has K_0 = Z[p_{}] and K_1 = Z[v_{1}]. The step A_{k+1} = A_k x| Z
// adjoins index k+2: both sequences split, old generators are included, and
// new ones are fixed by
//   delta_0([p_{J u {k+2}}]) = [v_J],   delta_1([v_{I u {k+2}}]) = -[p_I].
// Generators are symbolic labels, subsets of {1, ..., d+1}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "denjoy/error.hpp"

namespace denjoy {

inline constexpr std::size_t kMaxKTheoryDim = 16;

/// A subset of {1, ..., 63}; bit i-1 stands for index i.
class KLabel {
public:
    KLabel() = default;
    explicit KLabel(std::uint64_t bits) : bits_(bits) {}
    static KLabel of(const std::vector<std::size_t>& indices) {
        std::uint64_t b = 0;
        for (auto i : indices) {
            if (i < 1 || i > 63) throw DomainError("label index out of range");
            b |= std::uint64_t{1} << (i - 1);
        }
        return KLabel(b);
    }

    std::uint64_t bits() const { return bits_; }
    std::size_t cardinality() const { return static_cast<std::size_t>(__builtin_popcountll(bits_)); }
    bool contains(std::size_t i) const { return i >= 1 && i <= 63 && (bits_ >> (i - 1) & 1); }
    KLabel with(std::size_t i) const { return KLabel(bits_ | std::uint64_t{1} << (i - 1)); }
    std::size_t max_index() const { return bits_ ? 64 - static_cast<std::size_t>(__builtin_clzll(bits_)) : 0; }

    /// Increasing 1-based indices.
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> v;
        for (std::size_t i = 1; i <= 63; ++i)
            if (contains(i)) v.push_back(i);
        return v;
    }

    /// "{}", "{1,2}".
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (auto i : indices()) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
        return s + "}";
    }

    /// Accepts "{1,2}", "{}", "1,2", "∅".
    static KLabel parse(const std::string& text) {
        std::string t;
        for (char c : text)
            if (c != ' ') t += c;
        if (t == "\xE2\x88\x85" || t == "{}" || t.empty()) return KLabel();
        if (t.front() == '{') {
            if (t.back() != '}') throw ParseError("label: missing '}'", 1, text.size());
            t = t.substr(1, t.size() - 2);
        }
        std::vector<std::size_t> idx;
        std::size_t pos = 0;
        while (pos <= t.size()) {
            std::size_t comma = t.find(',', pos);
            std::string part = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("label: expected an index", 1, pos + 1);
            idx.push_back(std::stoul(part));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        for (std::size_t k = 1; k < idx.size(); ++k)
            if (idx[k] <= idx[k - 1]) throw ParseError("label: indices must increase", 1, 1);
        return of(idx);
    }

    friend bool operator==(const KLabel&, const KLabel&) = default;
    friend auto operator<=>(const KLabel&, const KLabel&) = default;

private:
    std::uint64_t bits_ = 0;
};

enum class KParity { K0, K1 };

struct KGroupDescriptor {
    KParity parity = KParity::K0;
    std::size_t rank = 0;
    std::vector<KLabel> basis_labels;

    std::ptrdiff_t position(const KLabel& l) const {
        auto it = std::find(basis_labels.begin(), basis_labels.end(), l);
        return it == basis_labels.end() ? -1 : it - basis_labels.begin();
    }
};

/// Integer matrix stored as (row, col, value) triples.
struct SparseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> entries;

    std::vector<std::vector<std::int64_t>> dense() const {
        std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols, 0));
        for (const auto& [r, c, v] : entries) m[r][c] += v;
        return m;
    }
    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols != b.rows) throw DomainError("sparse matrix product: shape mismatch");
        std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> brow(b.rows);
        for (const auto& [k, c, w] : b.entries) brow[k].emplace_back(c, w);
        std::map<std::pair<std::size_t, std::size_t>, std::int64_t> acc;
        for (const auto& [r, k, v] : a.entries)
            for (const auto& [c, w] : brow[k]) acc[{r, c}] += v * w;
        SparseMatrix p{a.rows, b.cols, {}};
        for (const auto& [rc, v] : acc)
            if (v) p.entries.emplace_back(rc.first, rc.second, v);
        return p;
    }
    bool is_zero() const {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return std::get<2>(e) == 0; });
    }
};

/// One PV step A_k -> A_{k+1} = A_k x| Z, which adjoins label index k+2.
struct IndexMapData {
    std::size_t step = 0;         ///< k + 1
    std::size_t new_index = 0;    ///< k + 2
    KGroupDescriptor k0_before, k1_before, k0_after, k1_after;
    SparseMatrix inclusion0;  ///< K_0(A_k) -> K_0(A_{k+1})
    SparseMatrix inclusion1;  ///< K_1(A_k) -> K_1(A_{k+1})
    SparseMatrix delta0;      ///< K_0(A_{k+1}) -> K_1(A_k)
    SparseMatrix delta1;      ///< K_1(A_{k+1}) -> K_0(A_k)
};

struct KTheory {
    std::size_t d = 0;
    KGroupDescriptor k0, k1;
    std::vector<IndexMapData> steps;
};

namespace detail {

// Columns are distinct unit vectors.
inline bool injective_embedding(const SparseMatrix& m) {
    std::vector<int> col_hits(m.cols, 0), row_hits(m.rows, 0);
    for (const auto& [r, c, v] : m.entries) {
        if (v == 0) continue;
        if (v != 1) return false;
        ++col_hits[c];
        ++row_hits[r];
    }
    return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; }) &&
           std::all_of(row_hits.begin(), row_hits.end(), [](int h) { return h <= 1; });
}

// Every target basis vector is +-1 times the image of some basis vector.
inline bool surjective_over_Z(const SparseMatrix& m) {
    std::vector<std::size_t> count(m.cols, 0);
    std::vector<std::pair<std::size_t, std::int64_t>> last(m.cols);
    for (const auto& [r, c, v] : m.entries) {
        if (v == 0) continue;
        ++count[c];
        last[c] = {r, v};
    }
    std::vector<bool> hit(m.rows, false);
    for (std::size_t c = 0; c < m.cols; ++c)
        if (count[c] == 1 && (last[c].second == 1 || last[c].second == -1)) hit[last[c].first] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

} // namespace detail

/// Both PV sequences of the step are split short exact on the recorded matrices.
inline bool is_split_exact(const IndexMapData& s) {
    const bool ranks = s.k0_after.rank == s.k0_before.rank + s.k1_before.rank &&
                       s.k1_after.rank == s.k1_before.rank + s.k0_before.rank;
    return ranks && detail::injective_embedding(s.inclusion0) && detail::injective_embedding(s.inclusion1) &&
           (s.delta0 * s.inclusion0).is_zero() && (s.delta1 * s.inclusion1).is_zero() &&
           detail::surjective_over_Z(s.delta0) && detail::surjective_over_Z(s.delta1);
}

inline KTheory k_groups(std::size_t d, std::size_t max_dim = kMaxKTheoryDim) {
    if (d < 1 || d > max_dim)
        throw DomainError("k_groups: d must lie in 1.." + std::to_string(max_dim));
    KTheory kt;
    kt.d = d;
    KGroupDescriptor k0{KParity::K0, 1, {KLabel()}};
    KGroupDescriptor k1{KParity::K1, 1, {KLabel::of({1})}};
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t add = k + 2;
        IndexMapData s;
        s.step = k + 1;
        s.new_index = add;
        s.k0_before = k0;
        s.k1_before = k1;
        KGroupDescriptor n0{KParity::K0, 0, k0.basis_labels}, n1{KParity::K1, 0, k1.basis_labels};
        for (const auto& J : k1.basis_labels) n0.basis_labels.push_back(J.with(add));
        for (const auto& I : k0.basis_labels) n1.basis_labels.push_back(I.with(add));
        n0.rank = n0.basis_labels.size();
        n1.rank = n1.basis_labels.size();

        s.inclusion0 = SparseMatrix{n0.rank, k0.rank, {}};
        for (std::size_t i = 0; i < k0.rank; ++i) s.inclusion0.entries.emplace_back(i, i, 1);
        s.inclusion1 = SparseMatrix{n1.rank, k1.rank, {}};
        for (std::size_t i = 0; i < k1.rank; ++i) s.inclusion1.entries.emplace_back(i, i, 1);
        s.delta0 = SparseMatrix{k1.rank, n0.rank, {}};
        for (std::size_t j = 0; j < k1.rank; ++j) s.delta0.entries.emplace_back(j, k0.rank + j, 1);
        s.delta1 = SparseMatrix{k0.rank, n1.rank, {}};
        for (std::size_t i = 0; i < k0.rank; ++i) s.delta1.entries.emplace_back(i, k1.rank + i, -1);

        s.k0_after = n0;
        s.k1_after = n1;
        kt.steps.push_back(std::move(s));
        k0 = std::move(n0);
        k1 = std::move(n1);
    }
    kt.k0 = std::move(k0);
    kt.k1 = std::move(k1);
    return kt;
}

} // namespace denjoy
