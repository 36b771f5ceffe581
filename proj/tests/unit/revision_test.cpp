#include <gtest/gtest.h>

#include "dialogic/annotation.hpp"
#include "dialogic/config.hpp"
#include "dialogic/revision.hpp"
#include "fixtures.hpp"

using namespace dialogic;

namespace {

TurnBelief tb(const std::string& s) { return TurnBelief(parse_goal(s)); }

std::string filtered(const std::string& belief, const std::string& utt) {
  return serialize_goal(slot_value_match_filter(tb(belief), utt, dialogic::testing::ontology()));
}

ActContext context_for(const std::string& state, DbResult db = {}) {
  ActContext ctx;
  ctx.ontology = &dialogic::testing::ontology();
  ctx.state = DialogueState(parse_goal(state));
  for (const auto& d : ctx.state.domains()) ctx.mentioned.insert(d);
  ctx.db = db;
  return ctx;
}

}  // namespace

TEST(Merge, LlmValueWinsAndAuxOnlyAppends) {
  auto m = merge_beliefs(tb("[hotel] area is south , stay is 5"), tb("[hotel] area is north , type is hotel"));
  EXPECT_EQ(serialize_goal(m), "[hotel] area is south , stay is 5 , type is hotel");
  EXPECT_EQ(serialize_goal(merge_beliefs(tb(""), tb("[train] day is monday"))), "[train] day is monday");
}

TEST(Filter, DropsValuesNotInUtterance) {
  EXPECT_EQ(filtered("[hotel] area is south , stay is 5 , people is 4", "i need a hotel in the south side please ."),
            "[hotel] area is south");
  EXPECT_EQ(filtered("[hotel] stay is 5 , people is 4", "i would like to to book it for 4 people and 5 nights."),
            "[hotel] stay is 5 , people is 4");
}

TEST(Filter, TokenBoundariesNumbersAndTimes) {
  EXPECT_EQ(filtered("[hotel] people is 8", "a room for 18 people"), "");
  EXPECT_EQ(filtered("[hotel] people is 8", "a room for eight people"), "[hotel] people is 8");
  EXPECT_EQ(filtered("[train] leave is 08:45", "sometime after 8:45 please"), "[train] leave is 08:45");
  EXPECT_EQ(filtered("[hotel] area is north", "somewhere northern"), "");
}

TEST(Filter, SpellingVariants) {
  EXPECT_EQ(filtered("[hotel] type is guesthouse", "a guest house please"), "[hotel] type is guesthouse");
  EXPECT_EQ(filtered("[restaurant] area is centre", "in the city center"), "[restaurant] area is centre");
  EXPECT_EQ(filtered("[hotel] pricerange is cheap", "something inexpensive"), "[hotel] pricerange is cheap");
}

TEST(Filter, BooleanCuesWithNegation) {
  EXPECT_EQ(filtered("[hotel] parking is yes", "i need free parking"), "[hotel] parking is yes");
  EXPECT_EQ(filtered("[hotel] parking is yes", "i do not need parking"), "");
  EXPECT_EQ(filtered("[hotel] parking is no", "i do not need parking"), "[hotel] parking is no");
  EXPECT_EQ(filtered("[hotel] internet is yes", "does it have wifi ?"), "[hotel] internet is yes");
  EXPECT_EQ(filtered("[hotel] internet is yes", "the area does not matter"), "");
}

TEST(Filter, DontcareCues) {
  EXPECT_EQ(filtered("[train] arrive is dontcare", "it does not matter ."), "[train] arrive is dontcare");
  EXPECT_EQ(filtered("[hotel] area is dontcare", "i have no preference"), "[hotel] area is dontcare");
  EXPECT_EQ(filtered("[hotel] area is dontcare", "the north please"), "");
}

TEST(Filter, ExemptEntriesAlwaysPass) {
  EXPECT_EQ(filtered("[general]", "thanks"), "[general]");
  EXPECT_EQ(filtered("[train]", "what is the cost ?"), "[train]");
  EXPECT_TRUE(is_exempt({"train", "none", "none"}));
  EXPECT_FALSE(is_exempt({"train", "day", "monday"}));
}

TEST(Filter, Idempotent) {
  const std::string b = "[hotel] area is south , stay is 5 , type is guesthouse , parking is yes";
  const std::string u = "a guest house in the south with parking for 5 nights";
  auto once = slot_value_match_filter(tb(b), u, dialogic::testing::ontology());
  auto twice = slot_value_match_filter(once, u, dialogic::testing::ontology());
  EXPECT_EQ(once, twice);
}

TEST(LexicalAux, RecoversMissedType) {
  const auto& o = dialogic::testing::ontology();
  LexicalAuxPredictor aux(o, dialogic::testing::seeds(), &dialogic::testing::db());
  const std::string u = "i need a hotel in the south side please .";
  auto rev = revise_belief(tb("[hotel] area is south , stay is 5 , people is 4"), {}, u, aux, o);
  EXPECT_EQ(serialize_goal(rev.belief), "[hotel] area is south , type is hotel");
  ASSERT_EQ(rev.report.degeneration_fixes.size(), 1u);
  EXPECT_EQ(rev.report.degeneration_fixes[0], (SlotTriple{"hotel", "type", "hotel"}));
  EXPECT_EQ(rev.report.overgeneration_drops.size(), 2u);
}

TEST(LexicalAux, PredictsCommonSlots) {
  const auto& o = dialogic::testing::ontology();
  LexicalAuxPredictor aux(o, dialogic::testing::seeds(), &dialogic::testing::db());
  auto b = aux.predict_belief({}, "i need a train to birmingham new street that arrives by 13:06 please .");
  EXPECT_EQ(*b.get("train", "destination"), "birmingham new street");
  EXPECT_EQ(*b.get("train", "arrive"), "13:06");
  NullAuxPredictor none;
  EXPECT_TRUE(none.predict_belief({}, "anything").empty());
  EXPECT_FALSE(none.predict_act({}, "x", {}, {}).has_value());
}

TEST(ActRules, R1DropsImpermissibleActsAndSlots) {
  auto ctx = context_for("[hotel] area is south [attraction] area is centre");
  auto r = validate_act(parse_act("[hotel] [inform] area price name [attraction] [offerbook]"), ctx,
                        ActRuleSet::defaults());
  EXPECT_EQ(serialize_act(r.act), "[hotel] [inform] area name");
  ASSERT_EQ(r.firings.size(), 2u);
  EXPECT_EQ(r.firings[0].rule, "R1-permitted");
  EXPECT_FALSE(r.firings[0].after.has_value());
}

TEST(ActRules, R3OfferbookedNeedsBookingContext) {
  auto rules = ActRuleSet::defaults();
  auto bare = context_for("[hotel] area is south");
  EXPECT_EQ(serialize_act(validate_act(parse_act("[hotel] [offerbooked] reference"), bare, rules).act),
            "[hotel] [inform] reference");
  auto booked = context_for("[hotel] area is south , stay is 5");
  EXPECT_EQ(serialize_act(validate_act(parse_act("[hotel] [offerbooked] reference"), booked, rules).act),
            "[hotel] [offerbooked] reference");
  auto offered = context_for("[hotel] area is south");
  offered.prior_acts.push_back(parse_act("[hotel] [inform] name [offerbook]"));
  EXPECT_EQ(serialize_act(validate_act(parse_act("[hotel] [offerbooked] reference"), offered, rules).act),
            "[hotel] [offerbooked] reference");
}

TEST(ActRules, R2NoResultBecomesNooffer) {
  auto ctx = context_for("[hotel] area is north , stars is 5", DbResult{"hotel", 0, DbBucket::Zero});
  auto r = validate_act(parse_act("[hotel] [inform] name area [offerbook]"), ctx, ActRuleSet::defaults());
  EXPECT_EQ(serialize_act(r.act), "[hotel] [nooffer]");
  auto other = context_for("[hotel] area is north", DbResult{"train", 0, DbBucket::Zero});
  EXPECT_EQ(serialize_act(validate_act(parse_act("[hotel] [inform] name"), other, ActRuleSet::defaults()).act),
            "[hotel] [inform] name");
}

TEST(ActRules, R4DropsUndiscussedDomains) {
  auto ctx = context_for("[hotel] area is south");
  auto r = validate_act(parse_act("[hotel] [inform] name [restaurant] [inform] food [general] [reqmore]"), ctx,
                        ActRuleSet::defaults());
  EXPECT_EQ(serialize_act(r.act), "[hotel] [inform] name [general] [reqmore]");
}

TEST(ActRules, EmptiedActGetsFallback) {
  auto ctx = context_for("[hotel] area is south");
  auto r = validate_act(parse_act("[restaurant] [inform] food"), ctx, ActRuleSet::defaults());
  EXPECT_TRUE(r.emptied);
  EXPECT_EQ(serialize_act(r.act), "[general] [reqmore]");
  auto empty = validate_act(DialogAct{}, ctx, ActRuleSet::defaults());
  EXPECT_FALSE(empty.emptied);
  EXPECT_EQ(serialize_act(empty.act), "[general] [reqmore]");
}

TEST(ActRules, FixpointOnValidActs) {
  auto ctx = context_for("[hotel] area is south , stay is 5");
  auto rules = ActRuleSet::defaults();
  for (const char* s : {"[hotel] [inform] area name [offerbook]", "[hotel] [offerbooked] reference [general] [reqmore]",
                        "[general] [bye]"}) {
    auto once = validate_act(parse_act(s), ctx, rules);
    EXPECT_EQ(serialize_act(once.act), s);
    EXPECT_TRUE(once.firings.empty());
    EXPECT_EQ(validate_act(once.act, ctx, rules).act, once.act);
  }
}

TEST(ActRules, CustomRuleSet) {
  ActRuleSet rules;
  rules.add({"no-bye", ActRule::Action::Drop,
             [](const DialogAct& a, std::size_t i, const ActContext&) { return a.triples[i].act == "bye"; }, nullptr,
             {}});
  auto r = validate_act(parse_act("[general] [bye]"), context_for(""), rules);
  EXPECT_TRUE(r.act.empty());
  EXPECT_TRUE(r.emptied);
}

TEST(Placeholders, MissingOnes) {
  auto act = parse_act("[hotel] [inform] name stars [offerbook]");
  auto miss = missing_placeholders(act, "the [value_name] is nice .");
  ASSERT_EQ(miss.size(), 1u);
  EXPECT_EQ(miss[0], "stars");
  EXPECT_TRUE(missing_placeholders(act, "[value_name] has [value_stars] stars").empty());
}
