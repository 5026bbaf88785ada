#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace catkit;
using namespace catkit::test;

namespace {

const std::map<std::string, std::size_t> golden_sections{
    {"constant", 3}, {"chain", 5}, {"terminal_correction", 4}, {"collapse", 2}, {"over_point", 2}};

bool segal_to_cartesian(const SimplicialExtension& x, const Section& p) {
    const Replacement& r = *x.replacement;
    for (ArrowId a = 0; a < r.cat()->num_arrows(); ++a)
        if ((classify(r.delta(a)) & label_segal) && !sends_segal_to_cartesian(x, p, a)) return false;
    return true;
}

std::vector<Section> presections(const SimplicialExtension& x) { return enumerate_sections(x.indexed()); }

MarkedIndexedCat marked(const std::string& name, WeqPreset preset) { return mark(corpus_fibration(name).cat, preset); }

}  // namespace

TEST(Sections, CountsMatchGoldens) {
    for (const auto& [name, count] : golden_sections) {
        auto e = corpus_fibration(name).cat;
        auto sects = enumerate_sections(e);
        EXPECT_EQ(sects.size(), count) << name;
        for (const auto& s : sects) EXPECT_TRUE(validate(e, s)) << name;
    }
}

TEST(Sections, SmallCases) {
    auto point = corpus_category("point");
    EXPECT_EQ(enumerate_sections(constant_indexed(point, corpus_category("chain2"))).size(), 3u);
    EXPECT_EQ(enumerate_sections(constant_indexed(corpus_category("arrow"), point)).size(), 1u);
    EXPECT_EQ(enumerate_sections(constant_indexed(corpus_category("arrow"), corpus_category("arrow"))).size(), 3u);
}

TEST(Sections, BrokenSectionsAreRejected) {
    auto e = corpus_fibration("chain").cat;
    auto sects = enumerate_sections(e);
    ASSERT_FALSE(sects.empty());
    for (const auto& s : sects) {
        Section u = s;
        u.structure[e.base->identity(0)] = no_arrow;
        EXPECT_FALSE(validate(e, u));
        // Moving one value breaks the endpoints of the structure maps into it.
        Section v = s;
        v.values[1] = (v.values[1] + 1) % e.fibre(1).num_objects();
        EXPECT_FALSE(validate(e, v));
    }
}

TEST(Sections, SizeCapApplies) {
    Limits tiny;
    tiny.max_items = 2;
    auto x = build_extension(corpus_fibration("chain").cat, 2);
    try {
        enumerate_sections(x.indexed(), tiny);
        FAIL() << "cap ignored";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::size_cap);
    }
}

TEST(Sections, EmbedOverThePointIsTheIdentity) {
    auto e = constant_indexed(corpus_category("point"), corpus_category("chain2"));
    auto x = build_extension(e, 2);
    // Over the point every string is degenerate, with one cartesian section per object of the fibre.
    for (const auto& s : enumerate_sections(e)) {
        Section p = embed(x, s);
        EXPECT_TRUE(validate(x.indexed(), p));
        EXPECT_EQ(x.fibre(0).sections[p.values[0]].objects[0], s.values[0]);
    }
}

TEST(Sections, EmbedIsABijectionOntoSegalToCartesian) {
    for (const auto& [name, count] : golden_sections)
        for (int level = 1; level <= 3; ++level) {
            auto e = corpus_fibration(name).cat;
            auto x = build_extension(e, level);
            IndexedCat ix = x.indexed();
            auto sects = enumerate_sections(e);
            std::vector<Section> embedded;
            for (const auto& s : sects) {
                Section p = embed(x, s);
                ASSERT_TRUE(validate(ix, p)) << name;
                EXPECT_TRUE(segal_to_cartesian(x, p)) << name;
                for (ObjectId c = 0; c < ix.base->num_objects(); ++c) EXPECT_TRUE(x.fibre(c).is_cartesian(e, p.values[c]));
                for (const auto& q : embedded) EXPECT_FALSE(q == p) << name << ": embed is not injective";
                embedded.push_back(p);
            }
            // Brute force: every presection, filtered afterwards.
            std::size_t brute = 0;
            if (level <= 2)
                for (const auto& p : presections(x))
                    if (segal_to_cartesian(x, p)) {
                        ++brute;
                        EXPECT_TRUE(std::find(embedded.begin(), embedded.end(), p) != embedded.end()) << name;
                    }
            // Pruned search: the same predicate consulted while the search runs.
            auto pruned = enumerate_sections(ix, {}, [&](const Section& partial, ArrowId a) {
                return !(classify(x.replacement->delta(a)) & label_segal) || sends_segal_to_cartesian(x, partial, a);
            });
            EXPECT_EQ(pruned.size(), count) << name << " N=" << level;
            if (level <= 2) EXPECT_EQ(brute, count) << name << " N=" << level;
            for (const auto& p : pruned) EXPECT_TRUE(std::find(embedded.begin(), embedded.end(), p) != embedded.end());
        }
}

TEST(Sections, EmbeddedSectionsAreSegal) {
    for (const auto& [name, count] : golden_sections) {
        auto w = marked(name, WeqPreset::isos);
        auto x = build_extension(w.cat, 3);
        for (const auto& s : enumerate_sections(w.cat)) {
            SegalVerdict v = is_segal(x, embed(x, s), w, {true});
            EXPECT_TRUE(v.pass) << name;
            EXPECT_TRUE(v.cross_checked && v.criteria_agree);
            EXPECT_NE(v.convention.find("strict"), std::string::npos);
        }
    }
}

TEST(Sections, EveryPresectionIsSegalForAllMaps) {
    for (const auto& name : {"constant", "chain"}) {
        auto w = marked(name, WeqPreset::all);
        auto x = build_extension(w.cat, 2);
        for (const auto& p : presections(x)) EXPECT_TRUE(is_segal(x, p, w).pass) << name;
    }
}

TEST(Sections, NonIdentityComparisonFailsWithWitness) {
    auto w = marked("constant", WeqPreset::isos);
    auto x = build_extension(w.cat, 1);
    const FinCat& rc = *x.replacement->cat();
    ObjectId edge = *rc.find_object("01");
    const FinCat& fibre = w.cat.fibre(1);
    std::size_t found = 0;
    for (const auto& p : presections(x)) {
        const StringSection& a = x.fibre(edge).sections[p.values[edge]];
        if (fibre.is_identity(a.comparisons[0])) continue;
        ++found;
        SegalVerdict v = is_segal(x, p, w);
        ASSERT_FALSE(v.pass);
        ASSERT_FALSE(v.witnesses.empty());
        bool named = false;
        for (const auto& wit : v.witnesses) named = named || wit.description.find(" = 01 ") != std::string::npos;
        EXPECT_TRUE(named) << v.witnesses.front().description;
    }
    EXPECT_GT(found, 0u);
}

TEST(Sections, SegalCriteriaAgreeUnderTwoOfThree) {
    for (const auto& name : {"constant", "chain", "terminal_correction", "collapse"})
        for (auto preset : {WeqPreset::isos, WeqPreset::identities, WeqPreset::all}) {
            auto w = marked(name, preset);
            auto x = build_extension(w.cat, 2);
            std::size_t pass = 0, fail = 0;
            for (const auto& p : presections(x)) {
                bool composite = check_segal_criterion(x, p, w, SegalCriterion::composite_adjunct).pass;
                bool adjacent = check_segal_criterion(x, p, w, SegalCriterion::adjacent).pass;
                ASSERT_EQ(composite, adjacent) << name;
                SegalVerdict v = is_segal(x, p, w, {true});
                EXPECT_TRUE(v.criteria_agree);
                if (!v.pass) EXPECT_FALSE(v.witnesses.empty());
                (v.pass ? pass : fail) += 1;
            }
            if (preset == WeqPreset::isos) EXPECT_GT(fail, 0u) << name;
            EXPECT_GT(pass, 0u) << name;
        }
}

TEST(Sections, TwoOfThreeFlagNeedsTwoOfThree) {
    auto w = marked("chain", WeqPreset::identities);
    const CatPtr& chain2 = w.cat.fibres[1];
    w.weq[1].insert(*chain2->find_arrow("01"));
    w.weq[1].insert(*chain2->find_arrow("12"));
    w.weq[2] = MapSubset::all(w.cat.fibres[2]);
    // The first fibre keeps only identities: its arrow is sent to the unmarked composite 02.
    ASSERT_TRUE(check_marked(w)) << check_marked(w).violation;
    auto x = build_extension(w.cat, 1);
    auto p = embed(x, enumerate_sections(w.cat).front());
    try {
        is_segal(x, p, w, {true});
        FAIL() << "two-of-three not enforced";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::precondition);
    }
}

TEST(Sections, SegalSectionsPassTheInitialPreservingTest) {
    for (const auto& name : {"chain", "terminal_correction"}) {
        auto w = marked(name, WeqPreset::isos);
        auto x = build_extension(w.cat, 2);
        const Replacement& r = *x.replacement;
        const FinCat& rc = *r.cat();
        for (const auto& p : presections(x)) {
            if (!is_segal(x, p, w).pass) continue;
            for (ArrowId a = 0; a < rc.num_arrows(); ++a) {
                if (r.delta(a)(0) != 0) continue;
                ObjectId c = rc.src(a);
                ArrowId phi = adjunct(x, a, p.values[c], p.structure[a]);
                const auto& comps = x.fibre(c).components[phi];
                for (std::size_t i = 0; i < comps.size(); ++i)
                    EXPECT_TRUE(w.weq[x.fibre(c).string.objects[i]].contains(comps[i])) << name << " " << rc.arrow_name(a);
            }
        }
    }
}

TEST(Sections, FactorClosedSubsets) {
    auto c = corpus_category("chain2");
    EXPECT_TRUE(check_factor_closed(MapSubset::all(c)));
    EXPECT_TRUE(check_factor_closed(MapSubset::identities(c)));
    MapSubset s = MapSubset::identities(c);
    s.insert(*c->find_arrow("01"));
    EXPECT_TRUE(check_factor_closed(s));
    MapSubset t = MapSubset::identities(c);
    t.insert(*c->find_arrow("02"));
    EXPECT_FALSE(check_factor_closed(t));
    MapSubset u = s;
    u.insert(*c->find_arrow("12"));
    EXPECT_FALSE(check_factor_closed(u));
}

TEST(Sections, LocallyConstantCriteriaAgree) {
    auto w = marked("chain", WeqPreset::isos);
    auto base = w.cat.base;
    std::vector<MapSubset> subsets{MapSubset::identities(base), MapSubset::all(base)};
    for (const char* one : {"01", "12"}) {
        MapSubset s = MapSubset::identities(base);
        s.insert(*base->find_arrow(one));
        subsets.push_back(s);
    }
    auto x = build_extension(w.cat, 2);
    std::size_t pass = 0, fail = 0;
    for (const auto& p : presections(x)) {
        if (!is_segal(x, p, w).pass) continue;
        for (const auto& s : subsets) {
            LocallyConstantVerdict v = is_locally_constant(x, p, w, s, {true});
            EXPECT_TRUE(v.cross_checked);
            ASSERT_TRUE(v.criteria_agree);
            if (!v.pass) EXPECT_FALSE(v.witnesses.empty());
            (v.pass ? pass : fail) += 1;
        }
        // No arrow is decoloured by the empty set.
        EXPECT_TRUE(check_local_criterion(x, p, w, MapSubset(base), LocalCriterion::decolouring).pass);
    }
    EXPECT_GT(pass, 0u);
    EXPECT_GT(fail, 0u);
}

TEST(Sections, EmbeddedSectionsAreLocallyConstantAlongIsos) {
    for (const auto& [name, count] : golden_sections) {
        auto w = marked(name, WeqPreset::isos);
        auto x = build_extension(w.cat, 2);
        for (const auto& s : enumerate_sections(w.cat))
            EXPECT_TRUE(is_locally_constant(x, embed(x, s), w, MapSubset::isos(w.cat.base), {true}).pass) << name;
    }
}

TEST(Sections, LocallyConstantNeedsSegal) {
    auto w = marked("constant", WeqPreset::isos);
    auto x = build_extension(w.cat, 1);
    for (const auto& p : presections(x)) {
        if (is_segal(x, p, w).pass) continue;
        try {
            is_locally_constant(x, p, w, MapSubset::all(w.cat.base));
            FAIL() << "non-Segal presection accepted";
        } catch (const Error& err) {
            EXPECT_EQ(err.kind(), ErrorKind::precondition);
        }
        return;
    }
    FAIL() << "no non-Segal presection found";
}

TEST(Sections, HoSectionForIsos) {
    for (const auto& [name, count] : golden_sections) {
        auto w = marked(name, WeqPreset::isos);
        auto x = build_extension(w.cat, 2);
        for (const auto& s : enumerate_sections(w.cat)) {
            HoSection h = section_to_ho(x, embed(x, s), w);
            ASSERT_TRUE(h.valid) << name << ": " << h.valid.violation;
            for (ObjectId c = 0; c < w.cat.base->num_objects(); ++c) {
                EXPECT_TRUE(find_isomorphism(h.ho.fibres[c], w.cat.fibres[c]).has_value());
                EXPECT_EQ(h.section.values[c], h.fibres[c].quotient.obj(s.values[c]));
            }
        }
    }
}

TEST(Sections, HoSectionForAllMapsIsCodiscrete) {
    auto w = marked("chain", WeqPreset::all);
    auto x = build_extension(w.cat, 2);
    std::size_t seen = 0;
    for (const auto& p : presections(x)) {
        HoSection h = section_to_ho(x, p, w);
        ASSERT_TRUE(h.valid) << h.valid.violation;
        for (ObjectId c = 0; c < w.cat.base->num_objects(); ++c) {
            std::size_t n = w.cat.fibres[c]->num_objects();
            EXPECT_TRUE(find_isomorphism(h.ho.fibres[c], share(codiscrete(n))).has_value());
        }
        ++seen;
    }
    EXPECT_EQ(seen, presections(x).size());
}
