#include <gtest/gtest.h>

#include <filesystem>

#include "stereo/error.hpp"
#include "stereo/generators.hpp"
#include "stereo/inference.hpp"

using namespace stereo;

namespace {

KnowledgeBase corpus(const std::string& name) {
  return load_kb_file(std::filesystem::path(STEREO_CORPUS_DIR) / (name + ".json"));
}

}  // namespace

TEST(BestStereotype, SingleConstantStereotype) {
  const auto kb = corpus("example1");
  for (std::uint64_t b = 1; b < 16; ++b) EXPECT_EQ(best_stereotype(kb, InfoSet(b)), 0U);
}

TEST(BestStereotype, AllSubsetsPickTheSetItself) {
  const auto kb = gen::example2(5);
  const InfoSet f(0b10010);
  EXPECT_EQ(kb.stereotype(best_stereotype(kb, f)).extent, f);
}

TEST(BestStereotype, MinimalRankSingleton) {
  const auto kb = corpus("example3");
  EXPECT_EQ(kb.stereotype(best_stereotype(kb, InfoSet(0b101000))).extent, InfoSet::singleton(3));
}

TEST(BestStereotype, TieAndEmpty) {
  const auto kb = corpus("tie");
  try {
    best_stereotype(kb, InfoSet(0b11));
    FAIL();
  } catch (const NoUniqueMinimum& e) {
    EXPECT_EQ(e.stereotypes(), (std::vector<std::string>{"A", "B"}));
  }
  EXPECT_THROW(best_stereotype(kb, InfoSet{}), EmptyInfoSet);
}

TEST(Consequences, PartitionDemo) {
  const auto kb = corpus("example4");
  const auto r = nm_consequences(kb, InfoSet(0b111));
  EXPECT_EQ(r.chosen, 0U);
  EXPECT_EQ(r.consequences, InfoSet(0b011));
  EXPECT_TRUE(r.consistent);
  ASSERT_EQ(r.distances.size(), 3U);
  EXPECT_EQ(r.distances[1], DistanceValue(4, 3));
}

TEST(Consequences, MinimalRankWorld) {
  const auto kb = corpus("example3");
  const auto f = models(parse_formula("a | b", kb.space()), kb.space());
  EXPECT_EQ(f, InfoSet(0b101000));
  EXPECT_EQ(nm_consequences(kb, f).consequences, InfoSet::singleton(3));
}

TEST(Consequences, EmptyGiven) {
  for (const char* name : {"example1", "example3", "example4", "tie"}) {
    const auto r = nm_consequences(corpus(name), InfoSet{});
    EXPECT_FALSE(r.chosen);
    EXPECT_TRUE(r.consequences.empty());
    EXPECT_TRUE(r.consistent);
  }
}

TEST(Consequences, InconsistentJumpIsReportedNotThrown) {
  // One stereotype {w0}: F = {w1} picks it and keeps nothing.
  const KnowledgeBase kb(binary_space(2), {{"S", InfoSet(0b01)}}, CardinalityFamily{});
  const auto r = nm_consequences(kb, InfoSet(0b10));
  EXPECT_EQ(r.chosen, 0U);
  EXPECT_TRUE(r.consequences.empty());
  EXPECT_FALSE(r.consistent);
}

TEST(Consequences, SelectionNeedNotBeMonotone) {
  // {w5} ⊆ {w3, w5}, yet the smaller set's stereotype {w5} is not inside {w3}.
  const auto kb = corpus("example3");
  const auto big = kb.stereotype(best_stereotype(kb, InfoSet(0b101000))).extent;
  const auto small = kb.stereotype(best_stereotype(kb, InfoSet(0b100000))).extent;
  EXPECT_FALSE(small.subset_of(big));
}

TEST(Entails, ReflexivityAndContradiction) {
  const auto kb = corpus("example4");
  const auto& sp = kb.space();
  for (const char* text : {"p", "p & ~q", "q | r", "p -> r"}) {
    const auto alpha = parse_formula(text, sp);
    EXPECT_TRUE(nm_entails(kb, alpha, alpha)) << text;
  }
  EXPECT_TRUE(nm_entails(kb, parse_formula("p & ~p", sp), parse_formula("q", sp)));
  EXPECT_TRUE(nm_entails(kb, parse_formula("p & ~p", sp), Formula::bottom()));
}

TEST(Entails, ConstantKbIsClassical) {
  const auto kb = corpus("example1");
  const auto& sp = kb.space();
  for (std::uint64_t a = 0; a < 16; ++a) {
    for (std::uint64_t b = 0; b < 16; ++b) {
      const auto alpha = canonical_formula(InfoSet(a), sp), beta = canonical_formula(InfoSet(b), sp);
      EXPECT_EQ(nm_entails(kb, alpha, beta), InfoSet(a).subset_of(InfoSet(b)));
    }
  }
}

TEST(Entails, PartitionDemoJumps) {
  const auto kb = corpus("example4");
  const auto& sp = kb.space();
  const auto alpha = canonical_formula(InfoSet(0b111), sp);
  // F' = {w0, w1}: q is false in both, p only in w1.
  EXPECT_TRUE(nm_entails(kb, alpha, parse_formula("~q", sp)));
  EXPECT_FALSE(nm_entails(kb, alpha, parse_formula("p", sp)));
}

TEST(Theory, StereotypeTheory) {
  const auto ex1 = corpus("example1");
  EXPECT_EQ(models(stereotype_theory(ex1, InfoSet(0b0110)), ex1.space()), ex1.space().all());
  const auto ex3 = corpus("example3");
  EXPECT_EQ(stereotype_theory(ex3, InfoSet(0b101000)), canonical_formula(InfoSet::singleton(3), ex3.space()));
  const auto ex4 = corpus("example4");
  EXPECT_EQ(stereotype_theory(ex4, InfoSet(0b111)), canonical_formula(InfoSet(0b011), ex4.space()));
}

TEST(Theory, ConsequenceClosure) {
  const auto ex4 = corpus("example4");
  EXPECT_EQ(consequence_closure(ex4, Formula::bottom()), Formula::bottom());
  EXPECT_EQ(consequence_closure(ex4, canonical_formula(InfoSet(0b111), ex4.space())),
            canonical_formula(InfoSet(0b011), ex4.space()));
  const auto ex2 = corpus("example2");
  for (const char* text : {"a", "a | b", "~a & b", "a -> b", "true"}) {
    const auto alpha = parse_formula(text, ex2.space());
    EXPECT_EQ(models(consequence_closure(ex2, alpha), ex2.space()), models(alpha, ex2.space())) << text;
  }
}

TEST(ChoiceTable, AgreesWithDirectInference) {
  for (const auto& kb : {corpus("example2"), corpus("example3"), corpus("example4"), corpus("tie")}) {
    const ChoiceTable table(kb);
    for (std::uint64_t b = 1; b < table.set_count(); ++b) {
      const InfoSet f(b);
      try {
        const auto r = nm_consequences(kb, f);
        EXPECT_FALSE(table.tied(f));
        EXPECT_EQ(table.chosen(f), r.chosen);
        EXPECT_EQ(table.consequences(f), r.consequences);
      } catch (const NoUniqueMinimum& e) {
        EXPECT_TRUE(table.tied(f));
        EXPECT_EQ(table.co_minimal(f).size(), e.stereotypes().size());
      }
    }
  }
}
