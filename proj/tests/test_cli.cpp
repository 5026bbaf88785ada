#include "cli.hpp"

#include <catkit/io.hpp>

#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <sstream>

using json = nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

std::string corpus(const std::string& rel) { return std::string(CATKIT_CORPUS_DIR) + "/" + rel; }

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = catkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Outcome run_json(std::vector<std::string> args) {
    args.push_back("--json");
    return run(std::move(args));
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "catkit_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Cli, ResolutionOfTheArrowToThePointIsCertified) {
    Outcome r = run({"check-resolution", "--functor", corpus("functors/arrow_to_point.json"), "-N", "3", "-d", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("verdict: CERTIFIED"), std::string::npos);
}

TEST(Cli, RefutedResolutionNamesAnEmptyFibre) {
    Outcome r = run_json({"check-resolution", "--functor", corpus("functors/discrete2_to_arrow.json"), "-N", "3", "-d", "2"});
    EXPECT_EQ(r.code, 1);
    json j = json::parse(r.out);
    EXPECT_EQ(j["verdict"], "REFUTED");
    EXPECT_EQ(j["exit"], 1);
    bool named = false;
    for (const auto& f : j["per_fibre"]) named = named || (f["string"] == "D(01)" && f["verdict"] == "EMPTY");
    EXPECT_TRUE(named) << r.out;
    EXPECT_FALSE(j["witness"].is_null());
}

TEST(Cli, HomologyOfTheCyclicGroupNerve) {
    Outcome r = run({"homology", "--sset", corpus("ssets/bz2_nerve.json"), "-d", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "H_0=Z, H_1=Z/2, H_2=0 (valid to degree 2)\n");
    Outcome c = run({"homology", "--category", corpus("categories/bz2.json"), "-d", "3"});
    EXPECT_EQ(c.out, r.out);
}

TEST(Cli, EmbeddedSectionIsSegal) {
    auto p = scratch("chain_bottom_presection.json").string();
    Outcome e = run({"embed", "--fibration", corpus("fibrations/chain.json"), "--section", corpus("sections/chain_bottom.json"),
                 "-N", "3", "--out", p});
    ASSERT_EQ(e.code, 0) << e.err;
    for (const auto& extra : {std::vector<std::string>{}, std::vector<std::string>{"--two-of-three"}}) {
        std::vector<std::string> args = {"check-segal", "--fibration", corpus("fibrations/chain.json"), "--presection", p,
                                         "--weq", "iso", "-N", "3"};
        args.insert(args.end(), extra.begin(), extra.end());
        Outcome r = run(args);
        EXPECT_EQ(r.code, 0) << r.out << r.err;
        EXPECT_NE(r.out.find("Segal: PASS"), std::string::npos);
    }
    Outcome direct = run({"check-segal", "--fibration", corpus("fibrations/chain.json"), "--section",
                      corpus("sections/chain_bottom.json"), "--weq", "iso", "-N", "3"});
    EXPECT_EQ(direct.code, 0);
}

TEST(Cli, FailedChecksNameWitnesses) {
    Outcome cof = run_json({"cofinal", "--functor", corpus("functors/point_to_arrow_start.json")});
    EXPECT_EQ(cof.code, 1);
    json j = json::parse(cof.out);
    EXPECT_EQ(j["verdict"], "REFUTED");
    ASSERT_FALSE(j["witness"].is_null()) << cof.out;
    EXPECT_EQ(j["witness"], "1\\f");
    Outcome end = run({"cofinal", "--functor", corpus("functors/point_to_arrow_end.json")});
    EXPECT_EQ(end.code, 0);

    Outcome t = run_json({"transpose", "--fibration", corpus("fibrations/chain.json")});
    EXPECT_EQ(t.code, 0) << t.out;
    Outcome adj = run_json({"adjoint", "--fibration", corpus("fibrations/chain.json"), "-N", "2"});
    EXPECT_EQ(adj.code, 0) << adj.out;
    EXPECT_EQ(json::parse(adj.out)["failures"], 0);
}

TEST(Cli, LocallyConstantChecks) {
    auto p = scratch("terminal_top_presection.json").string();
    Outcome e = run({"embed", "--fibration", corpus("fibrations/terminal_correction.json"), "--section",
                 corpus("sections/terminal_top.json"), "-N", "2", "--out", p});
    ASSERT_EQ(e.code, 0) << e.out << e.err;
    Outcome r = run_json({"check-locally-constant", "--fibration", corpus("fibrations/terminal_correction.json"),
                      "--presection", p, "--subset", corpus("subsets/arrow_all.json"), "-N", "2"});
    ASSERT_TRUE(r.code == 0 || r.code == 1) << r.out << r.err;
    json j = json::parse(r.out);
    EXPECT_TRUE(j["criteria_agree"].get<bool>());
    if (r.code == 1) EXPECT_FALSE(j["witnesses"].empty());
}

TEST(Cli, LocalisationWitnessesVerify) {
    Outcome r = run_json({"witness-localisation", "--category", corpus("categories/arrow.json"), "-N", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["failed"], 0);
    EXPECT_FALSE(j["witnesses"].empty());
}

TEST(Cli, StructuralCommands) {
    Outcome n = run_json({"nerve", "--category", corpus("categories/arrow.json"), "-N", "3"});
    EXPECT_EQ(n.code, 0);
    EXPECT_EQ(json::parse(n.out)["sizes"], json::array({2, 3, 4, 5}));
    Outcome rep = run_json({"replace", "--category", corpus("categories/bz2.json"), "-N", "2"});
    EXPECT_EQ(rep.code, 0);
    EXPECT_EQ(json::parse(rep.out)["objects_per_dim"], json::array({1, 2, 4}));
    Outcome x = run_json({"extend", "--fibration", corpus("fibrations/chain.json"), "-N", "1"});
    EXPECT_EQ(x.code, 0) << x.err;
    Outcome c = run_json({"comma", "--functor", corpus("functors/arrow_to_point.json"), "-N", "2"});
    EXPECT_EQ(c.code, 0) << c.out;
    Outcome s = run_json({"subdivide", "--category", corpus("categories/arrow.json"), "-k", "2", "-d", "2"});
    EXPECT_EQ(s.code, 0) << s.out;
    EXPECT_TRUE(json::parse(s.out)["homology_equal"].get<bool>());
    Outcome v = run({"validate", "--category", corpus("categories/square.json"), "--fibration", corpus("fibrations/chain.json"),
                 "--section", corpus("sections/chain_bottom.json"), "--sset", corpus("ssets/bz2_nerve.json")});
    EXPECT_EQ(v.code, 0) << v.err;
    Outcome cr = run_json({"check-comma-resolution", "--functor", corpus("functors/arrow_identity.json"), "-N", "1", "-d", "2"});
    EXPECT_EQ(cr.code, 0) << cr.out;
    EXPECT_EQ(json::parse(cr.out)["verdict"], "CERTIFIED");
}

TEST(Cli, MachineReportsAreByteStable) {
    std::vector<std::vector<std::string>> commands = {
        {"check-resolution", "--functor", corpus("functors/discrete2_to_arrow.json"), "-N", "2"},
        {"homology", "--sset", corpus("ssets/bz2_nerve.json")},
        {"replace", "--category", corpus("categories/square.json"), "-N", "2"},
        {"check-segal", "--fibration", corpus("fibrations/constant.json"), "--section", corpus("sections/constant_diagonal.json"),
         "-N", "2"},
    };
    for (const auto& c : commands) {
        Outcome a = run_json(c), b = run_json(c);
        EXPECT_EQ(a.out, b.out);
        json j = json::parse(a.out);
        EXPECT_EQ(j.dump(2) + "\n", a.out);
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"homology", "--sset", corpus("ssets/missing.json")}).code, 2);
    EXPECT_EQ(run({"homology"}).code, 2);
    EXPECT_EQ(run({"nerve", "--category", corpus("categories/bz2.json"), "-N", "5", "--cap", "10"}).code, 3);
    Outcome capped = run_json({"nerve", "--category", corpus("categories/bz2.json"), "-N", "5", "--cap", "10"});
    EXPECT_EQ(capped.code, 3);
    EXPECT_EQ(json::parse(capped.out)["error"]["kind"], "size_cap");
    EXPECT_EQ(run({"check-segal", "--fibration", corpus("fibrations/chain.json"), "--section",
                   corpus("sections/chain_bottom.json"), "--weq", "bogus"})
                  .code,
              2);
    EXPECT_EQ(run({"check-resolution", "--functor", corpus("functors/arrow_to_point.json"), "-N", "x"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}
