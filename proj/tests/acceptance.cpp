#include "support.hpp"

#include <catkit/resolution.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace catkit;
using namespace catkit::test;

namespace {

// Collects the first few failed expectations of one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++checked_;
        if (ok) return;
        if (failures_.size() < 3) failures_.push_back(what);
        ++failed_;
    }
    bool ok() const { return failed_ == 0 && checked_ > 0; }
    std::string summary() const {
        std::ostringstream os;
        os << checked_ << " checks";
        if (failed_) os << ", " << failed_ << " failed";
        for (const auto& f : failures_) os << "; " << f;
        return os.str();
    }

private:
    std::size_t checked_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

std::vector<SimplexMap> surjections(int k, int m) {
    std::vector<SimplexMap> out;
    for (auto& f : all_maps(k, m))
        if (f.is_surjective()) out.push_back(f);
    return out;
}

std::vector<SimplexMap> intervals(int k, int l) {
    if (k > l) return {};
    if (k == l) return {identity_map(k)};
    return {interval_inclusion(k, l, 0), interval_inclusion(k, l, l - k)};
}

bool is_interval(const SimplexMap& f, IntervalSide side) {
    for (int i = 1; i <= f.m; ++i)
        if (f(i) != f(i - 1) + 1) return false;
    return side == IntervalSide::left ? f(0) == 0 : f(f.m) == f.n;
}

// The poset fibre product is a chain matched bijectively by the apex.
bool brute_pullback(const DeltaSquare& sq) {
    std::vector<std::pair<int, int>> p;
    for (int i = 0; i <= sq.left.m; ++i)
        for (int j = 0; j <= sq.bottom.m; ++j)
            if (sq.left(i) == sq.bottom(j)) p.push_back({i, j});
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            bool le = p[a].first <= p[b].first && p[a].second <= p[b].second;
            bool ge = p[a].first >= p[b].first && p[a].second >= p[b].second;
            if (!le && !ge) return false;
        }
    if (static_cast<int>(p.size()) != sq.top.m + 1) return false;
    std::sort(p.begin(), p.end());
    for (int w = 0; w <= sq.top.m; ++w)
        if (p[static_cast<std::size_t>(w)] != std::pair{sq.top(w), sq.right(w)}) return false;
    return true;
}

SimplicialMap identity_map_of(const SSetPtr& x) {
    SimplicialMap id{x, x, {}};
    for (int k = 0; k <= x->level(); ++k) {
        std::vector<std::size_t> v(x->size(k));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        id.maps.push_back(std::move(v));
    }
    return id;
}

std::vector<std::size_t> sizes(const TruncatedSSet& x) {
    std::vector<std::size_t> s;
    for (int n = 0; n <= x.level(); ++n) s.push_back(x.size(n));
    return s;
}

bool segal_to_cartesian(const SimplicialExtension& x, const Section& p) {
    const Replacement& r = *x.replacement;
    for (ArrowId a = 0; a < r.cat()->num_arrows(); ++a)
        if ((classify(r.delta(a)) & label_segal) && !sends_segal_to_cartesian(x, p, a)) return false;
    return true;
}

void reedy(Check& c) {
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n)
            for (const auto& f : all_maps(m, n)) {
                ReedyFactorization r = factor_reedy(f);
                c.expect(r.surjection.is_surjective() && r.injection.is_injective() && compose(r.injection, r.surjection) == f,
                         "factorization of " + f.str());
                std::size_t found = 0;
                bool same = true;
                for (int k = 0; k <= std::min(m, n); ++k)
                    for (const auto& p : all_maps(m, k)) {
                        if (!p.is_surjective()) continue;
                        for (const auto& i : all_maps(k, n))
                            if (i.is_injective() && compose(i, p) == f) {
                                ++found;
                                same = same && p == r.surjection && i == r.injection;
                            }
                    }
                c.expect(found == 1 && same, "uniqueness for " + f.str());
            }
}

void nerve_counts(Check& c) {
    c.expect(sizes(*nerve(corpus_category("arrow"), 3).sset) == std::vector<std::size_t>{2, 3, 4, 5}, "nerve of [1]");
    c.expect(sizes(*nerve(corpus_category("bz2"), 2).sset) == std::vector<std::size_t>{1, 2, 4}, "nerve of BZ/2");
    for (const auto& name : corpus_categories()) {
        auto cat = corpus_category(name);
        Replacement r = simplicial_replacement(cat, 3);
        Nerve nv = nerve(cat, 3);
        std::size_t objects = 0;
        for (int n = 0; n <= 3; ++n) {
            std::size_t at_n = 0;
            for (ObjectId o = 0; o < r.cat()->num_objects(); ++o) at_n += r.string(o).dim() == n;
            c.expect(at_n == nv.sset->size(n), name + " replacement objects in dimension " + std::to_string(n));
            objects += nv.sset->size(n);
        }
        c.expect(r.cat()->num_objects() == objects, name + " replacement object count");
    }
}

void adjunctions(Check& c) {
    std::set<AdjointCase> seen;
    for (const auto& name : corpus_fibrations()) {
        auto x = build_extension(corpus_fibration(name).cat, 3);
        const FinCat& r = *x.replacement->cat();
        for (ArrowId a = 0; a < r.num_arrows(); ++a) {
            if (r.is_identity(a)) continue;
            seen.insert(adjoint_case(x.replacement->delta(a)));
            AdjunctionVerdict v = check_adjunction(x.transition(a), right_adjoint(x, a));
            c.expect(v.holds, name + " " + r.arrow_name(a) + ": " + v.witness);
        }
    }
    for (auto k : {AdjointCase::degeneracy, AdjointCase::fill, AdjointCase::drop_last, AdjointCase::drop_first})
        c.expect(seen.count(k) == 1, "case " + to_string(k) + " covered");
}

void section_counts(Check& c) {
    const std::map<std::string, std::size_t> golden{
        {"constant", 3}, {"chain", 5}, {"terminal_correction", 4}, {"collapse", 2}, {"over_point", 2}};
    for (const auto& [name, count] : golden) {
        auto e = corpus_fibration(name).cat;
        auto sects = enumerate_sections(e);
        c.expect(sects.size() == count, name + " golden section count");
        for (int level = 1; level <= 3; ++level) {
            auto x = build_extension(e, level);
            IndexedCat ix = x.indexed();
            std::vector<Section> embedded;
            for (const auto& s : sects) embedded.push_back(embed(x, s));
            auto pruned = enumerate_sections(ix, {}, [&](const Section& partial, ArrowId a) {
                return !(classify(x.replacement->delta(a)) & label_segal) || sends_segal_to_cartesian(x, partial, a);
            });
            std::string at = name + " N=" + std::to_string(level);
            c.expect(pruned.size() == count, at + " pruned count");
            for (const auto& p : pruned)
                c.expect(std::find(embedded.begin(), embedded.end(), p) != embedded.end(), at + " pruned presection embedded");
            if (level > 2) continue;
            std::size_t brute = 0;
            for (const auto& p : enumerate_sections(ix)) brute += segal_to_cartesian(x, p);
            c.expect(brute == count, at + " brute count");
        }
    }
}

void segal_criteria(Check& c) {
    std::size_t instances = 0;
    for (const auto& name : {"constant", "chain", "terminal_correction", "collapse"}) {
        MarkedIndexedCat w = mark(corpus_fibration(name).cat, WeqPreset::isos);
        for (const auto& sub : w.weq) c.expect(static_cast<bool>(check_two_of_three(sub)), std::string(name) + " two-of-three");
        auto x = build_extension(w.cat, 2);
        std::size_t pass = 0, fail = 0;
        for (const auto& p : enumerate_sections(x.indexed())) {
            bool composite = check_segal_criterion(x, p, w, SegalCriterion::composite_adjunct).pass;
            bool adjacent = check_segal_criterion(x, p, w, SegalCriterion::adjacent).pass;
            c.expect(composite == adjacent, std::string(name) + " criteria disagree");
            (composite ? pass : fail) += 1;
        }
        instances += pass > 0 && fail > 0;
    }
    c.expect(instances >= 2, "at least two instances with both outcomes");
}

void locally_constant_criteria(Check& c) {
    MarkedIndexedCat w = mark(corpus_fibration("chain").cat, WeqPreset::isos);
    auto base = w.cat.base;
    std::vector<MapSubset> subsets{MapSubset::all(base)};
    for (const char* one : {"01", "12"}) {
        MapSubset s = MapSubset::identities(base);
        s.insert(*base->find_arrow(one));
        subsets.push_back(s);
    }
    auto x = build_extension(w.cat, 2);
    std::size_t segal = 0, pass = 0, fail = 0;
    for (const auto& p : enumerate_sections(x.indexed())) {
        if (!is_segal(x, p, w).pass) continue;
        ++segal;
        for (const auto& s : subsets) {
            bool decolour = check_local_criterion(x, p, w, s, LocalCriterion::decolouring).pass;
            bool over = check_local_criterion(x, p, w, s, LocalCriterion::over_subset).pass;
            c.expect(decolour == over, "criteria disagree on a Segal presection");
            (decolour ? pass : fail) += 1;
        }
    }
    c.expect(segal > 0 && pass > 0 && fail > 0, "both outcomes occur");
}

void homology_values(Check& c) {
    HomologyResult point = nerve_homology(corpus_category("point"), 1);
    c.expect(point.str() == "(Z)", "H(point) = " + point.str());
    HomologyResult arrow = nerve_homology(corpus_category("arrow"), 2);
    c.expect(arrow.str() == "(Z, 0)", "H(nerve [1]) = " + arrow.str());
    HomologyResult bz = nerve_homology(corpus_category("bz2"), 3);
    c.expect(bz.str() == "(Z, Z/2, 0)", "H(nerve BZ/2) = " + bz.str());
    c.expect(bz.valid_to == 2, "valid to degree 2");
    c.expect(bz.torsion.size() == 3 && bz.torsion[1] == std::vector<Integer>{2}, "torsion Z/2 in degree 1");
}

void edgewise(Check& c) {
    const int d = 3;
    for (const auto& name : {"arrow", "bz2"})
        for (int k = 2; k <= 3; ++k) {
            auto nv = nerve(corpus_category(name), k * (d + 1) - 1);
            HomologyComparison cmp = homology_equal(edgewise_subdivide(k, *nv.sset), *nv.sset, d);
            c.expect(cmp.equal && cmp.compared_to == d - 1, std::string(name) + " k=" + std::to_string(k));
        }
}

void ladder(Check& c) {
    for (const auto& name : {"point", "arrow", "bz2", "iso2"})
        c.expect(check_resolution(identity_functor(corpus_category(name)), 3, 2).verdict == Verdict::certified,
                 std::string("identity of ") + name);
    c.expect(check_resolution(corpus_functor("iso2_to_point"), 3, 2).verdict == Verdict::certified, "iso2 to the point");
    c.expect(check_resolution(corpus_functor("arrow_to_point"), 3, 2).verdict == Verdict::certified, "[1] to [0]");
    DiagnosticReport bad = check_resolution(corpus_functor("discrete2_to_arrow"), 3, 2);
    c.expect(bad.verdict == Verdict::refuted, "discrete pair into [1] refuted");
    c.expect(bad.witness() && bad.witness()->name == "D(01)" && bad.witness()->verdict.kind == Contractibility::empty,
             "empty fibre D(01) named");
    for (const auto& name : corpus_fibrations()) {
        DiagnosticReport r = check_right_resolution(transpose(corpus_fibration(name).cat).proj, 2);
        c.expect(r.verdict == Verdict::certified, name + " transpose projection");
    }
    c.expect(check_right_resolution(corpus_functor("arrow_to_point"), 2).verdict == Verdict::certified, "[1] to [0] right");
}

void relative_comma_checks(Check& c) {
    for (const auto& [name, level] : {std::pair{"point", 3}, std::pair{"arrow", 2}, std::pair{"bz2", 2}}) {
        Nerve nv = nerve(corpus_category(name), level);
        SimplicialMap id = identity_map_of(nv.sset);
        RelComma r = relative_comma(id, id);
        std::string at = std::string(name) + " ";
        for (ObjectId o = 0; o < r.cat->num_objects(); ++o) c.expect(r.degree(o) == r.objects[o].n + r.objects[o].m, at + "degree");
        c.expect(static_cast<bool>(check_rel_comma(r)), at + check_rel_comma(r).violation);
        c.expect(r.include_y.has_value(), at + "inclusion of Y");
        if (r.include_y) {
            auto eq = is_equivalence(*r.include_y);
            c.expect(eq.full && eq.faithful, at + "inclusion fully faithful");
            c.expect(same_tables(compose(r.to_y, *r.include_y), identity_functor(r.y_elements.cat)), at + "p_Y i_Y = id");
        }
        CheckReport lifts = check_face_lifts(r);
        c.expect(static_cast<bool>(lifts), at + lifts.violation);
        for (ObjectId o = 0; o < r.cat->num_objects(); ++o)
            for (int k = 0; k <= r.objects[o].n; ++k)
                for (const auto& a : all_maps(k, r.objects[o].n)) {
                    if (!a.is_injective()) continue;
                    ArrowId e = face_lift(r, o, a);
                    c.expect(r.cat->src(e) == o && r.arrows[e].a == a && is_opcartesian(r.to_x, e), at + "face lift");
                }
    }
    const int bound = 5;
    std::size_t first = 0, second = 0;
    for (int k = 0; k <= bound; ++k)
        for (int l = k; l <= bound; ++l)
            for (int n = 0; n <= l; ++n)
                for (int m = 0; m <= k; ++m)
                    for (const auto& top : intervals(k, l))
                        for (const auto& left : surjections(l, n))
                            for (const auto& right : surjections(k, m)) {
                                std::vector<int> bv(static_cast<std::size_t>(m + 1), -1);
                                for (int i = 0; i <= k; ++i) bv[static_cast<std::size_t>(right(i))] = left(top(i));
                                bool consistent = true;
                                for (int i = 0; i <= k; ++i)
                                    consistent = consistent && bv[static_cast<std::size_t>(right(i))] == left(top(i));
                                if (!consistent) continue;
                                DeltaSquare sq{top, SimplexMap{m, n, bv}, left, right};
                                if (!sq.validate()) continue;
                                SquareFactorization fac = factor_square_1(sq);
                                c.expect(fac.verified && paste(fac.first, fac.second) == sq &&
                                             is_interval(fac.first.bottom, fac.side) && fac.second.bottom.is_surjective() &&
                                             fac.side == *interval_side(top),
                                         "first square lemma");
                                ++first;
                            }
    for (int m = 0; m <= bound; ++m)
        for (int n = m; n <= bound; ++n)
            for (int l = n; l <= bound; ++l)
                for (int k = m; k <= bound; ++k)
                    for (const auto& bottom : intervals(m, n))
                        for (const auto& left : surjections(l, n))
                            for (const auto& right : surjections(k, m)) {
                                SimplexMap target = compose(bottom, right);
                                for (const auto& top : all_maps(k, l)) {
                                    if (!(compose(left, top) == target)) continue;
                                    DeltaSquare sq{top, bottom, left, right};
                                    SquareFactorization fac = factor_square_2(sq);
                                    c.expect(fac.verified && paste(fac.first, fac.second) == sq &&
                                                 is_interval(fac.first.top, fac.side) && brute_pullback(fac.first),
                                             "second square lemma");
                                    ++second;
                                }
                            }
    c.expect(first > 1000 && second > 1000, "square enumeration is nontrivial");
}

void cofinality_checks(Check& c) {
    Replacement r = simplicial_replacement(corpus_category("arrow"), 3);
    for (ObjectId b = 0; b < r.base->num_objects(); ++b)
        c.expect(nerve_homology(under(b, r.head).cat, 2).trivial_reduced(), "head comma under " + r.base->object_name(b));
    c.expect(cofinality(r.head, 2).verdict != Verdict::refuted, "head not refuted");
    std::vector<CatPtr> cats;
    for (const auto& n : corpus_categories()) cats.push_back(corpus_category(n));
    std::size_t with_adjoint = 0;
    for (const auto& a : cats)
        for (const auto& b : cats) {
            auto backward = all_functors(b, a);
            for (const auto& f : all_functors(a, b)) {
                bool found = std::any_of(backward.begin(), backward.end(), [&](const FinFunctor& l) { return check_adjunction(l, f).holds; });
                if (!found) continue;
                ++with_adjoint;
                c.expect(cofinality(f, 2).verdict == Verdict::certified, "functor with a left adjoint");
            }
        }
    c.expect(with_adjoint > 10, "left adjoints discovered");
}

void localisation(Check& c) {
    for (const auto& name : {"arrow", "bz2"}) {
        Replacement r = simplicial_replacement(corpus_category(name), 3);
        auto ws = localisation_witnesses(r);
        std::size_t expected = 0;
        for (ArrowId a = 0; a < r.cat()->num_arrows(); ++a) expected += r.base->is_identity(r.head.arr(a));
        c.expect(ws.size() == expected, std::string(name) + " one witness per head-identity map");
        for (const auto& w : ws) c.expect(w.verified(), std::string(name) + " " + r.cat()->arrow_name(w.map));
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, void (*)(Check&)>> criteria{
        {"reedy factorization", reedy},
        {"nerve counts", nerve_counts},
        {"adjunction suite", adjunctions},
        {"section counts", section_counts},
        {"segal criteria", segal_criteria},
        {"locally constant criteria", locally_constant_criteria},
        {"homology", homology_values},
        {"edgewise invariance", edgewise},
        {"resolution ladder", ladder},
        {"relative comma", relative_comma_checks},
        {"cofinality", cofinality_checks},
        {"localisation witnesses", localisation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        std::string detail;
        try {
            criteria[i].second(c);
            detail = c.summary();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
            detail = c.summary();
        }
        std::cout << (c.ok() ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << detail << std::endl;
        failed += !c.ok();
    }
    return failed ? 1 : 0;
}
