#include <catkit/homotopy.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace catkit {

namespace {

using Column = std::vector<std::pair<std::size_t, Integer>>;

// c' -= factor * c, keeping rows sorted; reports rows entering and leaving the support.
void axpy(Column& target, const Integer& factor, const Column& pivot, std::vector<std::size_t>& added,
          std::vector<std::size_t>& removed) {
    Column out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < target.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < target.size() && target[i].first < pivot[j].first)) {
            out.push_back(std::move(target[i++]));
        } else if (i == target.size() || pivot[j].first < target[i].first) {
            out.emplace_back(pivot[j].first, -factor * pivot[j].second);
            added.push_back(pivot[j].first);
            ++j;
        } else {
            Integer v = target[i].second - factor * pivot[j].second;
            if (v != 0)
                out.emplace_back(target[i].first, std::move(v));
            else
                removed.push_back(target[i].first);
            ++i;
            ++j;
        }
    }
    target = std::move(out);
}

std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a) {
    std::vector<Integer> out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            std::size_t pr = rows, pc = cols;
            Integer best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < best)) {
                        best = abs(a[i][j]);
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) return out;
            std::swap(a[t], a[pr]);
            for (auto& row : a) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Integer q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Integer q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        out.push_back(abs(a[t][t]));
    }
    return out;
}

}  // namespace

std::vector<Integer> invariant_factors(IntMatrix m) {
    std::vector<std::unordered_set<std::size_t>> row_support(m.rows);
    std::vector<char> live(m.cols, 1);
    for (std::size_t c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[c]) row_support[r].insert(c);
    std::size_t units = 0;
    std::vector<std::size_t> added, removed;
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (!live[c] || m.columns[c].empty()) continue;
            std::size_t pivot_row = m.rows;
            std::size_t best = 0;
            Integer unit;
            for (const auto& [r, v] : m.columns[c])
                if ((v == 1 || v == -1) && (pivot_row == m.rows || row_support[r].size() < best)) {
                    pivot_row = r;
                    best = row_support[r].size();
                    unit = v;
                }
            if (pivot_row == m.rows) continue;
            std::vector<std::size_t> others(row_support[pivot_row].begin(), row_support[pivot_row].end());
            for (std::size_t c2 : others) {
                if (c2 == c) continue;
                auto it = std::lower_bound(m.columns[c2].begin(), m.columns[c2].end(), pivot_row,
                                           [](const auto& e, std::size_t r) { return e.first < r; });
                Integer factor = it->second * unit;
                added.clear();
                removed.clear();
                axpy(m.columns[c2], factor, m.columns[c], added, removed);
                for (auto r : added) row_support[r].insert(c2);
                for (auto r : removed) row_support[r].erase(c2);
            }
            for (const auto& [r, v] : m.columns[c]) row_support[r].erase(c);
            live[c] = 0;
            m.columns[c].clear();
            ++units;
            progress = true;
        }
    }
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < m.rows; ++r)
        if (!row_support[r].empty()) rows.push_back(r);
    for (std::size_t c = 0; c < m.cols; ++c)
        if (live[c] && !m.columns[c].empty()) cols.push_back(c);
    std::vector<std::vector<Integer>> dense(rows.size(), std::vector<Integer>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, v] : m.columns[cols[j]]) {
            auto i = static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), r) - rows.begin());
            dense[i][j] = v;
        }
    std::vector<Integer> out(units, Integer(1));
    auto rest = dense_smith(std::move(dense));
    std::sort(rest.begin(), rest.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

ChainComplex normalized_chains(const TruncatedSSet& x, int top) {
    if (top > x.level()) throw Error(ErrorKind::precondition, "chain degree exceeds the truncation level");
    ChainComplex c;
    c.top = top;
    std::vector<std::vector<std::size_t>> position(static_cast<std::size_t>(top + 1));
    for (int n = 0; n <= top; ++n) {
        std::vector<std::size_t> basis;
        position[static_cast<std::size_t>(n)].assign(x.size(n), unset_simplex);
        for (std::size_t s = 0; s < x.size(n); ++s)
            if (!x.is_degenerate(n, s)) {
                position[static_cast<std::size_t>(n)][s] = basis.size();
                basis.push_back(s);
            }
        c.basis.push_back(std::move(basis));
    }
    c.boundary.resize(static_cast<std::size_t>(top + 1));
    for (int n = 1; n <= top; ++n) {
        IntMatrix& d = c.boundary[static_cast<std::size_t>(n)];
        d.rows = c.basis[static_cast<std::size_t>(n - 1)].size();
        d.cols = c.basis[static_cast<std::size_t>(n)].size();
        d.columns.resize(d.cols);
        for (std::size_t j = 0; j < d.cols; ++j) {
            std::map<std::size_t, Integer> entries;
            for (int i = 0; i <= n; ++i) {
                std::size_t face = x.face(n, i, c.basis[static_cast<std::size_t>(n)][j]);
                std::size_t row = position[static_cast<std::size_t>(n - 1)][face];
                if (row == unset_simplex) continue;
                entries[row] += (i % 2 == 0) ? 1 : -1;
            }
            for (auto& [row, v] : entries)
                if (v != 0) d.columns[j].emplace_back(row, v);
        }
    }
    return c;
}

bool HomologyResult::trivial_reduced() const {
    for (int n = 0; n <= valid_to; ++n) {
        if (betti[static_cast<std::size_t>(n)] != (n == 0 ? 1u : 0u)) return false;
        if (!torsion[static_cast<std::size_t>(n)].empty()) return false;
    }
    return true;
}

std::string HomologyResult::str() const {
    std::ostringstream os;
    os << "(";
    for (int n = 0; n <= valid_to; ++n) {
        if (n) os << ", ";
        std::vector<std::string> parts;
        auto b = betti[static_cast<std::size_t>(n)];
        if (b == 1) parts.push_back("Z");
        if (b > 1) parts.push_back("Z^" + std::to_string(b));
        for (const auto& t : torsion[static_cast<std::size_t>(n)]) parts.push_back("Z/" + t.str());
        if (parts.empty()) parts.push_back("0");
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "+" : "") << parts[i];
    }
    os << ")";
    return os.str();
}

HomologyResult homology(const ChainComplex& c) {
    HomologyResult h;
    h.valid_to = c.top - 1;
    std::vector<std::size_t> rank(static_cast<std::size_t>(c.top + 2), 0);
    std::vector<std::vector<Integer>> factors(static_cast<std::size_t>(c.top + 2));
    for (int n = 1; n <= c.top; ++n) {
        factors[static_cast<std::size_t>(n)] = invariant_factors(c.boundary[static_cast<std::size_t>(n)]);
        rank[static_cast<std::size_t>(n)] = factors[static_cast<std::size_t>(n)].size();
    }
    for (int n = 0; n < c.top; ++n) {
        std::size_t dim = c.basis[static_cast<std::size_t>(n)].size();
        h.betti.push_back(dim - rank[static_cast<std::size_t>(n)] - rank[static_cast<std::size_t>(n + 1)]);
        std::vector<Integer> tors;
        for (const auto& f : factors[static_cast<std::size_t>(n + 1)])
            if (f > 1) tors.push_back(f);
        h.torsion.push_back(std::move(tors));
    }
    return h;
}

HomologyResult homology(const TruncatedSSet& x, int d) { return homology(normalized_chains(x, std::min(d, x.level()))); }

HomologyResult nerve_homology(const CatPtr& c, int d, const Limits& limits) {
    Nerve nv = nerve(c, d, limits);
    return homology(*nv.sset, d);
}

HomologyComparison homology_equal(const TruncatedSSet& x, const TruncatedSSet& y, int d) {
    HomologyResult hx = homology(x, d), hy = homology(y, d);
    HomologyComparison out;
    out.compared_to = std::min(hx.valid_to, hy.valid_to);
    out.equal = true;
    for (int n = 0; n <= out.compared_to; ++n)
        if (hx.betti[static_cast<std::size_t>(n)] != hy.betti[static_cast<std::size_t>(n)] ||
            hx.torsion[static_cast<std::size_t>(n)] != hy.torsion[static_cast<std::size_t>(n)])
            out.equal = false;
    return out;
}

std::string to_string(Contractibility c) {
    switch (c) {
        case Contractibility::certified: return "CERTIFIED";
        case Contractibility::homology_trivial: return "HOMOLOGY_TRIVIAL";
        case Contractibility::not_contractible: return "NOT_CONTRACTIBLE";
        case Contractibility::empty: return "EMPTY";
    }
    return "?";
}

std::string ContractibilityVerdict::str() const {
    std::string s = to_string(kind);
    if (kind == Contractibility::homology_trivial) s += "(" + std::to_string(depth) + ")";
    if (!witness.empty()) s += ": " + witness;
    return s;
}

ContractibilityVerdict contractibility(const CatPtr& c, int d, const Limits& limits) {
    ContractibilityVerdict v;
    v.depth = d;
    if (c->num_objects() == 0) {
        v.kind = Contractibility::empty;
        v.witness = "no objects";
        return v;
    }
    if (auto i = find_initial(*c); i.object) {
        v.kind = Contractibility::certified;
        v.witness = "initial object " + c->object_name(*i.object);
        return v;
    }
    if (auto t = find_terminal(*c); t.object) {
        v.kind = Contractibility::certified;
        v.witness = "terminal object " + c->object_name(*t.object);
        return v;
    }
    if (d < 1) throw Error(ErrorKind::usage, "homology depth must be at least 1");
    HomologyResult h = nerve_homology(c, d, limits);
    v.homology = h;
    if (h.trivial_reduced()) {
        v.kind = Contractibility::homology_trivial;
    } else {
        v.kind = Contractibility::not_contractible;
        v.witness = "homology " + h.str();
    }
    return v;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "CERTIFIED";
        case Verdict::evidence_only: return "EVIDENCE-ONLY";
        case Verdict::refuted: return "REFUTED";
    }
    return "?";
}

Verdict combine(Verdict a, Contractibility c) {
    if (a == Verdict::refuted || c == Contractibility::not_contractible || c == Contractibility::empty)
        return Verdict::refuted;
    if (a == Verdict::evidence_only || c == Contractibility::homology_trivial) return Verdict::evidence_only;
    return Verdict::certified;
}

}  // namespace catkit
