#include <gtest/gtest.h>

#include <set>

#include "cam/matrix.hpp"
#include "cam/relevance.hpp"
#include "cam/subsumption.hpp"
#include "fixtures.hpp"

using namespace cam;

namespace {

KillMatrix make_kills(std::vector<int> ids, std::vector<std::vector<bool>> rows,
                      std::vector<std::string> tests) {
    KillMatrix kills;
    kills.tests = std::move(tests);
    kills.fom_ids = std::move(ids);
    kills.fom_kills = std::move(rows);
    for (const auto& row : kills.fom_kills) {
        std::vector<RunStatus> status;
        for (bool bit : row)
            status.push_back(bit ? RunStatus::AssertionFailure : RunStatus::Pass);
        kills.fom_status.push_back(std::move(status));
    }
    return kills;
}

} // namespace

TEST(Subsume, GroupsEqualKillSetsAndFindsMinimalClasses) {
    KillMatrix kills = make_kills({1, 2, 3, 4, 5},
                                  {{true, false, false},
                                   {true, true, false},
                                   {true, true, false},
                                   {false, true, true},
                                   {false, false, false}},
                                  {"t1", "t2", "t3"});
    SubsumptionResult result = subsumption(kills, {1, 2, 3, 4, 5});

    EXPECT_EQ(result.universe, (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(result.equivalent, (std::vector<int>{5}));
    ASSERT_EQ(result.classes.size(), 3u);
    EXPECT_EQ(result.classes[0].mutants, (std::vector<int>{1}));
    EXPECT_EQ(result.classes[0].killing_tests, (std::vector<std::string>{"t1"}));
    EXPECT_EQ(result.classes[1].mutants, (std::vector<int>{2, 3}));
    EXPECT_EQ(result.classes[1].killing_tests, (std::vector<std::string>{"t1", "t2"}));
    EXPECT_EQ(result.classes[2].mutants, (std::vector<int>{4}));

    EXPECT_EQ(result.hasse,
              (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
    EXPECT_EQ(result.subsuming_mutants, (std::vector<int>{1, 4}));

    EXPECT_TRUE(result.subsumes(0, 0));
    EXPECT_TRUE(result.subsumes(0, 1));
    EXPECT_FALSE(result.subsumes(1, 0));
    EXPECT_FALSE(result.subsumes(0, 2));
    EXPECT_FALSE(result.subsumes(2, 1));
}

TEST(Subsume, HasseEdgesAreCoversNotTheFullOrder) {
    KillMatrix kills = make_kills({1, 2, 3},
                                  {{true, false, false},
                                   {true, true, false},
                                   {true, true, true}},
                                  {"t1", "t2", "t3"});
    SubsumptionResult result = subsumption(kills, {1, 2, 3});
    ASSERT_EQ(result.classes.size(), 3u);
    EXPECT_EQ(result.hasse,
              (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}}));
    EXPECT_TRUE(result.subsumes(0, 2));  // implied transitively, not an edge
    EXPECT_EQ(result.subsuming_mutants, (std::vector<int>{1}));
}

TEST(Subsume, UniverseIsDeduplicatedAndRestrictsTheAnalysis) {
    KillMatrix kills = make_kills({1, 2, 3},
                                  {{true, false}, {true, true}, {false, true}},
                                  {"t1", "t2"});
    SubsumptionResult result = subsumption(kills, {3, 1, 1});
    EXPECT_EQ(result.universe, (std::vector<int>{1, 3}));
    ASSERT_EQ(result.classes.size(), 2u);
    EXPECT_EQ(result.subsuming_mutants, (std::vector<int>{1, 3}));
}

TEST(Subsume, EmptyAndAllEquivalentUniverses) {
    KillMatrix kills = make_kills({1, 2}, {{false}, {false}}, {"t1"});
    SubsumptionResult none = subsumption(kills, {});
    EXPECT_TRUE(none.universe.empty());
    EXPECT_TRUE(none.classes.empty());
    EXPECT_TRUE(none.subsuming_mutants.empty());

    SubsumptionResult all = subsumption(kills, {1, 2});
    EXPECT_TRUE(all.universe.empty());
    EXPECT_EQ(all.equivalent, (std::vector<int>{1, 2}));
    EXPECT_TRUE(all.classes.empty());
}

TEST(Subsume, WorkedExampleSubsumingRelevantMutant) {
    cam::testing::ReaderFixture fx = cam::testing::reader_fixture();
    MatrixBundle bundle = build_matrices(fx.subject, fx.tests, fx.foms, fx.pairs);
    RelevanceReport report = detect_relevant(bundle.matrix, bundle.kills, fx.foms, fx.pairs);

    SubsumptionResult relevant = subsumption(bundle.kills, report.relevant_ids());
    EXPECT_EQ(relevant.universe, (std::vector<int>{1, 3}));
    ASSERT_EQ(relevant.classes.size(), 2u);
    // the loop-counter mutant dies only under the empty-buffer test, whose
    // kill set sits inside the boundary mutant's
    EXPECT_EQ(relevant.subsuming_mutants, (std::vector<int>{3}));
    EXPECT_EQ(subsuming_commit_relevant(bundle.kills, report), (std::vector<int>{3}));
}

TEST(Subsume, OneKillingTestPerSubsumingClassKillsTheWholeUniverse) {
    cam::testing::ReaderFixture fx = cam::testing::reader_fixture();
    MatrixBundle bundle = build_matrices(fx.subject, fx.tests, fx.foms, fx.pairs);
    std::vector<int> all_ids;
    for (const Mutant& m : fx.foms) all_ids.push_back(m.id);
    SubsumptionResult result = subsumption(bundle.kills, all_ids);

    std::set<std::string> chosen;
    std::set<int> subsuming(result.subsuming_mutants.begin(),
                            result.subsuming_mutants.end());
    for (const SubsumeClass& cls : result.classes) {
        if (!subsuming.count(cls.mutants.front())) continue;
        ASSERT_FALSE(cls.killing_tests.empty());
        chosen.insert(cls.killing_tests.front());
    }

    for (int id : result.universe) {
        bool killed = false;
        for (const std::string& test : bundle.kills.killing_tests(id))
            killed = killed || chosen.count(test) != 0;
        EXPECT_TRUE(killed) << "mutant " << id;
    }
}
