#include <gtest/gtest.h>

#include <algorithm>

#include "deid/chains.hpp"

using namespace deid;

namespace {

Gazetteer test_gazetteer() {
    Gazetteer gaz;
    gaz.given_names = {"Pedro", "Juan", "Juana", "María", "Jorge", "José"};
    gaz.surname_particles = {"de", "del", "la", "los"};
    return gaz;
}

const Gazetteer kGaz = test_gazetteer();

// Builds a synthetic mention at a fresh offset; chaining only looks at the
// parsed name, the surface, and the order.
std::vector<Mention> make_mentions(const std::vector<std::string>& surfaces) {
    std::vector<Mention> out;
    std::size_t offset = 0;
    for (const auto& s : surfaces) {
        const std::size_t len = uni::length(s);
        Mention m{Span(offset, offset + len), s, parse_person_name(s, kGaz),
                  Trigger::capitalized_sequence};
        out.push_back(std::move(m));
        offset += len + 1;
    }
    return out;
}

std::vector<std::vector<std::string>> chain_surfaces(const ChainSet& cs,
                                                     const std::vector<Mention>& mentions) {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : cs.chains) {
        std::vector<std::string> members;
        for (std::size_t mi : c.mention_indices) members.push_back(mentions[mi].surface);
        out.push_back(std::move(members));
    }
    return out;
}

} // namespace

TEST(Chain, NameVariantsOfTwoBrothersFormTwoChains) {
    // caption, conjunction conjuncts, repeats, full form, bare given names
    std::vector<Mention> mentions = make_mentions({"Pérez Rodríguez, Pedro", "Pedro",
                                                   "Juan Pérez", "Pedro Pérez", "Pedro Pérez",
                                                   "Pedro Pérez Rodríguez", "Pedro", "Juan"});
    // the second mention is the "Pedro" conjunct of "Sres. Pedro y Juan
    // Pérez": its parse carries the distributed surname
    mentions[1].parsed.surnames = {"Pérez"};
    mentions[1].trigger = Trigger::conjunction;
    mentions[2].trigger = Trigger::conjunction;

    const ChainSet cs = chain(mentions);
    ASSERT_EQ(cs.chains.size(), 2u);
    const auto groups = chain_surfaces(cs, mentions);
    EXPECT_EQ(groups[0],
              (std::vector<std::string>{"Pérez Rodríguez, Pedro", "Pedro", "Pedro Pérez",
                                        "Pedro Pérez", "Pedro Pérez Rodríguez", "Pedro"}));
    EXPECT_EQ(groups[1], (std::vector<std::string>{"Juan Pérez", "Juan"}));
    // the late full form enriched the canonical of the first chain
    EXPECT_EQ(cs.chains[0].canonical.given, (std::vector<std::string>{"Pedro"}));
    EXPECT_EQ(cs.chains[0].canonical.surnames, (std::vector<std::string>{"Pérez", "Rodríguez"}));
}

TEST(Chain, BareSurnameJoinsTheUniqueChainCarryingIt) {
    const auto mentions = make_mentions({"Juan Pérez", "María Rodríguez", "Pérez",
                                         "Juana Fernández"});
    const ChainSet cs = chain(mentions);
    ASSERT_EQ(cs.chains.size(), 3u);
    const auto groups = chain_surfaces(cs, mentions);
    EXPECT_EQ(groups[0], (std::vector<std::string>{"Juan Pérez", "Pérez"}));
    EXPECT_EQ(groups[1], (std::vector<std::string>{"María Rodríguez"}));
    EXPECT_EQ(groups[2], (std::vector<std::string>{"Juana Fernández"}));
}

TEST(Chain, BareSurnameWithTwoCandidateChainsFoundsItsOwn) {
    const auto mentions = make_mentions({"Juan Pérez", "Pedro Pérez", "Pérez"});
    const ChainSet cs = chain(mentions);
    ASSERT_EQ(cs.chains.size(), 3u);
    EXPECT_EQ(cs.chains[2].mention_indices, (std::vector<std::size_t>{2}));
}

TEST(Chain, BareGivenWithTwoCandidateChainsFoundsItsOwn) {
    const auto mentions = make_mentions({"Pedro Pérez", "Pedro Gómez", "Pedro"});
    const ChainSet cs = chain(mentions);
    ASSERT_EQ(cs.chains.size(), 3u);
}

TEST(Chain, MoreSpecificCanonicalWinsOnMultipleMatches) {
    // "Pedro Pérez" is compatible with both the full-form chain (2 shared
    // parts) and the bare-"Pedro" chain (1 shared part); it joins the
    // strictly more specific one.
    const auto mentions =
        make_mentions({"Pedro Pérez Rodríguez", "Pedro Gómez", "Pedro", "Pedro Pérez"});
    const ChainSet cs = chain(mentions);
    ASSERT_EQ(cs.chains.size(), 3u);
    EXPECT_EQ(cs.chains[0].mention_indices, (std::vector<std::size_t>{0, 3}));
    EXPECT_EQ(cs.chains[1].mention_indices, (std::vector<std::size_t>{1}));
    EXPECT_EQ(cs.chains[2].mention_indices, (std::vector<std::size_t>{2}));
}

TEST(Chain, EmptyInput) {
    const ChainSet cs = chain({});
    EXPECT_TRUE(cs.chains.empty());
    EXPECT_TRUE(cs.mention_spans.empty());
}

TEST(Chain, IdenticalSurfacesAlwaysShareAChain) {
    // Both "Pedro" mentions are ambiguous between the two surname chains;
    // they must still land in the same (new) chain together.
    const auto mentions = make_mentions({"Pedro Pérez", "Pedro Gómez", "Pedro", "Pedro"});
    const ChainSet cs = chain(mentions);
    ASSERT_EQ(cs.chains.size(), 3u);
    EXPECT_EQ(cs.chains[2].mention_indices, (std::vector<std::size_t>{2, 3}));
}

TEST(Chain, PartitionPropertyHolds) {
    const auto mentions = make_mentions({"Pérez Rodríguez, Pedro", "Juan Pérez", "Pedro",
                                         "Juan", "María Rodríguez", "Pérez"});
    const ChainSet cs = chain(mentions);
    std::vector<bool> seen(mentions.size(), false);
    for (const auto& c : cs.chains) {
        EXPECT_FALSE(c.mention_indices.empty());
        EXPECT_TRUE(std::is_sorted(c.mention_indices.begin(), c.mention_indices.end()));
        for (std::size_t mi : c.mention_indices) {
            EXPECT_FALSE(seen[mi]);
            seen[mi] = true;
        }
    }
    for (bool b : seen) EXPECT_TRUE(b);
}

TEST(Chain, DeterministicForFixedOrder) {
    const auto mentions = make_mentions({"Pérez Rodríguez, Pedro", "Juan Pérez", "Pedro",
                                         "Juan", "Pérez"});
    const ChainSet a = chain(mentions);
    const ChainSet b = chain(mentions);
    ASSERT_EQ(a.chains.size(), b.chains.size());
    for (std::size_t i = 0; i < a.chains.size(); ++i) {
        EXPECT_EQ(a.chains[i].mention_indices, b.chains[i].mention_indices);
    }
}

TEST(ToPartition, ChainsBecomeEntitiesKeyedBySpan) {
    const auto mentions = make_mentions({"Juan Pérez", "Pérez"});
    const ChainSet cs = chain(mentions);
    const Partition p = to_partition(cs);
    ASSERT_EQ(p.entity_count(), 1u);
    EXPECT_EQ(p.mention_count(), 2u);
    EXPECT_TRUE(p.entities[0].count("0-10"));
}

TEST(ToPartition, EmptyAndSingletons) {
    EXPECT_EQ(to_partition(chain({})).entity_count(), 0u);
    const auto mentions = make_mentions({"Juan Pérez", "María Rodríguez"});
    const Partition p = to_partition(chain(mentions));
    ASSERT_EQ(p.entity_count(), 2u);
    for (const auto& e : p.entities) EXPECT_EQ(e.size(), 1u);
}
