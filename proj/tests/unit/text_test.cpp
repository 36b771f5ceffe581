#include <gtest/gtest.h>

#include "dialogic/text.hpp"
#include "dialogic/types.hpp"

using namespace dialogic;

TEST(Text, NormalizeDetachesTrailingPunctuation) {
  EXPECT_EQ(text::normalize_text("  We will stay 2 Nights.  "), "we will stay 2 nights .");
  EXPECT_EQ(text::normalize_text("is it free?"), "is it free ?");
  EXPECT_EQ(text::normalize_text("a\t b\n c"), "a b c");
}

TEST(Text, ValuesAndTimes) {
  EXPECT_EQ(text::normalize_value("  Birmingham   New Street "), "birmingham new street");
  EXPECT_EQ(text::canonical_time("8:45"), "08:45");
  EXPECT_EQ(text::canonical_time("13:06"), "13:06");
  EXPECT_EQ(text::canonical_time("noon"), "noon");
  EXPECT_TRUE(text::is_time("9:05"));
  EXPECT_FALSE(text::is_time("9:5"));
  EXPECT_EQ(text::number_word("eight"), 8);
  EXPECT_EQ(text::number_word("thirty"), 30);
  EXPECT_FALSE(text::number_word("many").has_value());
}

TEST(Text, MatchFormNormalizesNumbersAndTimes) {
  EXPECT_EQ(text::match_form("Eight people at 8:45."), "8 people at 08:45");
}

TEST(Text, PhraseNeedsTokenBoundaries) {
  EXPECT_TRUE(text::contains_phrase("a room for 8 people", "8"));
  EXPECT_FALSE(text::contains_phrase("a room for 18 people", "8"));
  EXPECT_TRUE(text::contains_phrase("north", "north"));
  EXPECT_FALSE(text::contains_phrase("northern", "north"));
  EXPECT_TRUE(text::contains_phrase("3-star hotel", "3"));
}

TEST(SlotMapTest, OverwriteKeepsPosition) {
  SlotMap m;
  m.set("hotel", "stars", "4");
  m.set("hotel", "stay", "2");
  m.set("hotel", "stars", "5");
  auto t = m.triples();
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], (SlotTriple{"hotel", "stars", "5"}));
  EXPECT_EQ(t[1], (SlotTriple{"hotel", "stay", "2"}));
}

TEST(SlotMapTest, DomainOnlyEntries) {
  SlotMap m;
  m.add({"police", "none", "none"});
  EXPECT_TRUE(m.has_domain("police"));
  EXPECT_EQ(m.slot_count(), 0u);
  ASSERT_EQ(m.triples().size(), 1u);
  EXPECT_EQ(m.triples()[0], (SlotTriple{"police", "none", "none"}));
  m.set("hotel", "area", "north");
  EXPECT_TRUE(m.erase("hotel", "area"));
  EXPECT_FALSE(m.has_domain("hotel"));
}

TEST(Accumulate, LastWriterWins) {
  TurnBelief b1, b2, b3, b4;
  b1.set("hotel", "type", "hotel");
  b1.set("hotel", "pricerange", "cheap");
  b2.set("hotel", "stay", "3");
  b2.add_domain("taxi");
  b3.set("hotel", "stay", "2");
  b4.add_domain("general");
  auto s = accumulate_state({b1, b2, b3, b4});
  EXPECT_EQ(*s.get("hotel", "stay"), "2");
  EXPECT_EQ(*s.get("hotel", "pricerange"), "cheap");
  EXPECT_FALSE(s.has_domain("taxi"));
  EXPECT_FALSE(s.has_domain("general"));
  EXPECT_EQ(s.slot_count(), 3u);
}

TEST(Accumulate, EmptyHistory) { EXPECT_TRUE(accumulate_state({}).empty()); }

TEST(GenConfigTest, ValidateRejectsNonsense) {
  GenConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_shots = 0;
  EXPECT_ANY_THROW(c.validate());
  c = {};
  c.select_temperature = 0;
  EXPECT_ANY_THROW(c.validate());
  c = {};
  c.max_turns = 0;
  EXPECT_ANY_THROW(c.validate());
}
