#include "support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace catkit;
using namespace catkit::test;

namespace {

// Sections A_i with kappa_i: A_i -> (f_i)_! A_{i-1}, counted by recursion on the string.
std::size_t brute_sections(const IndexedCat& e, const SimplexString& s) {
    std::vector<std::size_t> count(e.fibre(s.objects[0]).num_objects(), 1);
    for (std::size_t i = 1; i < s.objects.size(); ++i) {
        const FinCat& fib = e.fibre(s.objects[i]);
        const FinFunctor& push = e.push(s.arrows[i - 1]);
        std::vector<std::size_t> next(fib.num_objects(), 0);
        for (ObjectId prev = 0; prev < count.size(); ++prev)
            for (ObjectId x = 0; x < fib.num_objects(); ++x) next[x] += count[prev] * fib.hom(x, push.obj(prev)).size();
        count = std::move(next);
    }
    std::size_t total = 0;
    for (auto c : count) total += c;
    return total;
}

// Componentwise maps commuting with every comparison, by exhaustive product of hom-sets.
std::size_t brute_maps(const IndexedCat& e, const SimplexString& s, const StringSection& a, const StringSection& b) {
    std::size_t n = 0;
    std::vector<ArrowId> comps(s.objects.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == comps.size()) {
            for (std::size_t j = 1; j < comps.size(); ++j) {
                const FinCat& fib = e.fibre(s.objects[j]);
                if (fib.compose(b.comparisons[j - 1], comps[j]) !=
                    fib.compose(e.push(s.arrows[j - 1]).arr(comps[j - 1]), a.comparisons[j - 1]))
                    return;
            }
            ++n;
            return;
        }
        for (ArrowId t : e.fibre(s.objects[i]).hom(a.objects[i], b.objects[i])) {
            comps[i] = t;
            go(i + 1);
        }
    };
    go(0);
    return n;
}

SimplicialExtension corpus_extension(const std::string& name, int level) {
    return build_extension(corpus_fibration(name).cat, level);
}

}  // namespace

TEST(Extension, FibreSizesMatchBruteForce) {
    for (const auto& name : corpus_fibrations()) {
        auto x = corpus_extension(name, 2);
        const IndexedCat& e = x.base;
        for (ObjectId c = 0; c < x.replacement->cat()->num_objects(); ++c) {
            const ExtensionFibre& f = x.fibre(c);
            ASSERT_TRUE(validate(*f.cat)) << name << " " << c;
            ASSERT_EQ(f.cat->num_objects(), brute_sections(e, f.string)) << name << " over " << c;
            for (ObjectId a = 0; a < f.cat->num_objects(); ++a) {
                EXPECT_TRUE(validate(e, f.string, f.sections[a]));
                EXPECT_EQ(f.find(f.sections[a]), a);
                for (ObjectId b = 0; b < f.cat->num_objects(); ++b)
                    ASSERT_EQ(f.cat->hom(a, b).size(), brute_maps(e, f.string, f.sections[a], f.sections[b]));
            }
        }
    }
}

TEST(Extension, ComparisonsComposeAlongTheString) {
    auto x = corpus_extension("chain", 2);
    const IndexedCat& e = x.base;
    for (ObjectId c = 0; c < x.replacement->cat()->num_objects(); ++c) {
        const ExtensionFibre& f = x.fibre(c);
        int n = f.string.dim();
        for (const auto& a : f.sections)
            for (int i = 0; i <= n; ++i) {
                const FinCat& fib = e.fibre(f.string.objects[static_cast<std::size_t>(i)]);
                EXPECT_TRUE(fib.is_identity(comparison(e, f.string, a, i, i)));
                for (int j = 0; j < i; ++j) {
                    ArrowId k = comparison(e, f.string, a, i, j);
                    EXPECT_EQ(fib.src(k), a.objects[static_cast<std::size_t>(i)]);
                    EXPECT_EQ(fib.dst(k), e.push(chain_arrow(*e.base, f.string, j, i)).obj(a.objects[static_cast<std::size_t>(j)]));
                }
            }
    }
}

TEST(Extension, TransitionsAreStrictlyFunctorial) {
    for (const auto& name : corpus_fibrations()) {
        auto x = corpus_extension(name, 2);
        const FinCat& r = *x.replacement->cat();
        std::vector<FinFunctor> t;
        for (ArrowId a = 0; a < r.num_arrows(); ++a) {
            t.push_back(x.transition(a));
            ASSERT_TRUE(validate(t.back())) << name << " " << r.arrow_name(a);
            if (r.is_identity(a)) EXPECT_TRUE(same_tables(t.back(), identity_functor(x.fibre(r.src(a)).cat)));
        }
        for (ArrowId a = 0; a < r.num_arrows(); ++a)
            for (ArrowId b : r.out_arrows(r.dst(a)))
                ASSERT_TRUE(same_tables(compose(t[b], t[a]), t[r.compose(b, a)]))
                    << name << ": " << r.arrow_name(b) << " o " << r.arrow_name(a);
    }
}

TEST(Extension, IndexedViewValidates) {
    auto x = corpus_extension("terminal_correction", 2);
    EXPECT_TRUE(validate(x.indexed()));
}

TEST(Extension, AdjointCases) {
    EXPECT_EQ(adjoint_case(identity_map(2)), AdjointCase::identity);
    EXPECT_EQ(adjoint_case(codegeneracy(1, 0)), AdjointCase::degeneracy);
    EXPECT_EQ(adjoint_case(coface(2, 1)), AdjointCase::fill);
    EXPECT_EQ(adjoint_case(coface(2, 2)), AdjointCase::drop_last);
    EXPECT_EQ(adjoint_case(coface(2, 0)), AdjointCase::drop_first);
    EXPECT_EQ(adjoint_case(make_simplex_map(0, 2, {1})), AdjointCase::composite);
    EXPECT_EQ(adjoint_case(make_simplex_map(2, 2, {0, 0, 2})), AdjointCase::composite);
}

TEST(Extension, RightAdjointsHoldOnTheCorpus) {
    std::set<AdjointCase> seen;
    for (const auto& name : corpus_fibrations()) {
        auto x = corpus_extension(name, 2);
        const FinCat& r = *x.replacement->cat();
        for (ArrowId a = 0; a < r.num_arrows(); ++a) {
            if (r.is_identity(a)) continue;
            seen.insert(adjoint_case(x.replacement->delta(a)));
            FinFunctor right = right_adjoint(x, a);
            ASSERT_TRUE(validate(right)) << name << " " << r.arrow_name(a);
            AdjunctionVerdict v = check_adjunction(x.transition(a), right);
            ASSERT_TRUE(v.holds) << name << " " << r.arrow_name(a) << ": " << v.witness;
        }
    }
    for (auto c : {AdjointCase::degeneracy, AdjointCase::fill, AdjointCase::drop_last, AdjointCase::drop_first,
                   AdjointCase::composite})
        EXPECT_TRUE(seen.count(c)) << to_string(c);
}

TEST(Extension, RightAdjointsAtLevelThree) {
    auto x = corpus_extension("terminal_correction", 3);
    const FinCat& r = *x.replacement->cat();
    for (ArrowId a = 0; a < r.num_arrows(); ++a) {
        if (r.is_identity(a)) continue;
        AdjunctionVerdict v = check_adjunction(x.transition(a), right_adjoint(x, a));
        ASSERT_TRUE(v.holds) << r.arrow_name(a) << ": " << v.witness;
    }
}

TEST(Extension, AdjunctsAreUnique) {
    for (const auto& name : {"chain", "terminal_correction"}) {
        auto x = corpus_extension(name, 2);
        const FinCat& r = *x.replacement->cat();
        const IndexedCat& e = x.base;
        for (ArrowId alpha = 0; alpha < r.num_arrows(); ++alpha) {
            if (r.is_identity(alpha)) continue;
            const ExtensionFibre& source = x.fibre(r.src(alpha));
            const ExtensionFibre& target = x.fibre(r.dst(alpha));
            const SimplexMap& delta = x.replacement->delta(alpha);
            FinFunctor push = x.transition(alpha);
            for (ObjectId b = 0; b < target.cat->num_objects(); ++b) {
                StringSection rb = right_adjoint_section(e, source.string, delta, target.sections[b]);
                ObjectId rbo = *source.find(rb);
                auto eps = target.find_arrow(push.obj(rbo), b, counit_components(e, source.string, delta, target.sections[b]));
                ASSERT_TRUE(eps) << name << " counit missing";
                for (ObjectId a = 0; a < source.cat->num_objects(); ++a)
                    for (ArrowId sigma : target.cat->hom(push.obj(a), b)) {
                        std::size_t solutions = 0;
                        for (ArrowId phi : source.cat->hom(a, rbo))
                            solutions += target.cat->compose(*eps, push.arr(phi)) == sigma;
                        ASSERT_EQ(solutions, 1u);
                        ArrowId phi = adjunct(x, alpha, a, sigma);
                        EXPECT_EQ(target.cat->compose(*eps, push.arr(phi)), sigma);
                    }
            }
        }
    }
}

TEST(Extension, MissingLimitsAreReported) {
    // Discrete fibres have no terminal object, so extending past the end has no canonical value.
    auto e = constant_indexed(corpus_category("arrow"), corpus_category("discrete2"));
    auto x = build_extension(e, 2);
    const FinCat& r = *x.replacement->cat();
    std::size_t missing = 0;
    for (ArrowId a = 0; a < r.num_arrows(); ++a) {
        if (r.is_identity(a)) continue;
        try {
            right_adjoint(x, a);
        } catch (const Error& err) {
            ASSERT_EQ(err.kind(), ErrorKind::missing_limit) << err.what();
            ++missing;
        }
    }
    EXPECT_GT(missing, 0u);
}

TEST(Extension, CanonicalLimits) {
    auto sq = corpus_category("square");
    EXPECT_EQ(sq->object_name(*canonical_terminal(*sq)), "11");
    auto p = canonical_product(*sq, *sq->find_object("01"), *sq->find_object("10"));
    ASSERT_TRUE(p);
    EXPECT_EQ(sq->object_name(p->apex), "00");
    auto pb = canonical_pullback(*sq, *sq->find_arrow("h1"), *sq->find_arrow("v1"));
    ASSERT_TRUE(pb);
    EXPECT_EQ(pb->legs.size(), 2u);
    auto d = corpus_category("discrete2");
    EXPECT_FALSE(canonical_terminal(*d));
    EXPECT_FALSE(canonical_product(*d, 0, 1));
}

TEST(Extension, SIsCartesianAndTIsTheLastEvaluation) {
    for (const auto& name : corpus_fibrations()) {
        auto x = corpus_extension(name, 2);
        for (ObjectId c = 0; c < x.replacement->cat()->num_objects(); ++c) {
            FinFunctor s = functor_S(x, c);
            ASSERT_TRUE(validate(s));
            for (ObjectId v = 0; v < s.dom()->num_objects(); ++v) EXPECT_TRUE(x.fibre(c).is_cartesian(x.base, s.obj(v)));
            int n = x.fibre(c).string.dim();
            EXPECT_TRUE(same_tables(compose(evaluation(x, c, n), s), functor_T(x, c)));
            EXPECT_TRUE(same_tables(compose(evaluation(x, c, 0), s), identity_functor(s.dom())));
        }
    }
}
