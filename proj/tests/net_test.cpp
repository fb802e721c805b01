#include <algorithm>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "netpoly/codec.hpp"
#include "netpoly/isomorphism.hpp"
#include "netpoly/net.hpp"
#include "netpoly/net_io.hpp"
#include "support/generators.hpp"
#include "support/nets.hpp"

namespace netpoly {
namespace {

using namespace netpoly::testing;

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(NETPOLY_SAMPLES_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const Event* find_event(const PetriNet& n, const std::string& id) {
    auto it = std::find_if(n.events.begin(), n.events.end(), [&](const Event& e) { return e.id == id; });
    return it == n.events.end() ? nullptr : &*it;
}

TEST(Validate, CleanNetHasNoWarnings) {
    EXPECT_TRUE(validate(two_cycles_net()).empty());
}

TEST(Validate, IsolatedConditionWarns) {
    auto n = two_cycles_net();
    n.conditions.push_back("c");
    const auto warnings = validate(n);
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_EQ(warnings[0], "isolated condition c");
}

TEST(Validate, EmptyPreWarns) {
    const auto warnings = validate(producer_consumer_net());
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_EQ(warnings[0], "event b has empty pre");
}

TEST(Validate, HardErrors) {
    auto dangling = two_cycles_net();
    dangling.events[0].pre.insert("zz");
    EXPECT_THROW(validate(dangling), StructureError);

    auto dup_condition = two_cycles_net();
    dup_condition.conditions.push_back("b0");
    EXPECT_THROW(validate(dup_condition), StructureError);

    auto dup_event = two_cycles_net();
    dup_event.events.push_back(dup_event.events[0]);
    EXPECT_THROW(validate(dup_event), StructureError);

    const auto report = check(dangling);
    ASSERT_EQ(report.errors.size(), 1u);
    EXPECT_EQ(report.errors[0], "event e1 references unknown condition zz");
}

TEST(Product, SelfLoopTimesProducerConsumer) {
    const auto p = product(self_loop_net(), producer_consumer_net());
    EXPECT_EQ(p.conditions, (std::vector<ConditionId>{"L:0", "R:1"}));
    ASSERT_EQ(p.events.size(), 5u);
    const auto* ab = find_event(p, "(a,b)");
    ASSERT_NE(ab, nullptr);
    EXPECT_EQ(ab->pre, (std::set<ConditionId>{"L:0"}));
    EXPECT_EQ(ab->post, (std::set<ConditionId>{"L:0", "R:1"}));
    const auto* sc = find_event(p, "(*,c)");
    ASSERT_NE(sc, nullptr);
    EXPECT_EQ(sc->pre, (std::set<ConditionId>{"R:1"}));
    EXPECT_TRUE(sc->post.empty());
    for (const char* id : {"(a,*)", "(a,c)", "(*,b)"}) EXPECT_NE(find_event(p, id), nullptr) << id;
    EXPECT_TRUE(are_isomorphic(p, self_loop_times_producer_consumer()));
}

TEST(Product, EmptyNetIsUnit) {
    const auto n = two_cycles_net();
    const auto p = product(n, PetriNet{});
    EXPECT_EQ(p.events.size(), n.events.size());
    EXPECT_TRUE(are_isomorphic(p, n));
    EXPECT_TRUE(are_isomorphic(product(PetriNet{}, n), n));
}

TEST(Product, CountsAndAlgebraicLaws) {
    Rng rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        NetShape shape{3, 3, true, "b"};
        const auto a = random_net(rng, shape);
        const auto b = random_net(rng, shape);
        const auto c = random_net(rng, shape);
        const auto ab = product(a, b);
        EXPECT_EQ(ab.conditions.size(), a.conditions.size() + b.conditions.size());
        EXPECT_EQ(ab.events.size(), a.events.size() * b.events.size() + a.events.size() + b.events.size());
        EXPECT_TRUE(check(ab).ok());
        EXPECT_TRUE(are_isomorphic(ab, product(b, a)));
        if (trial < 60) {
            EXPECT_TRUE(are_isomorphic(product(ab, c), product(a, product(b, c))));
        }
    }
}

TEST(Attach, MergesEqualLabels) {
    const auto r = attach(attach_left_net(), attach_left_labels(), attach_right_net(), attach_right_labels());
    EXPECT_EQ(r.net.conditions.size(), 4u);
    EXPECT_EQ(r.net.events.size(), 3u);
    std::set<Label> labels;
    for (const auto& [b, v] : r.labeling) labels.insert(v);
    EXPECT_EQ(labels, (std::set<Label>{1, 2, 3, 4}));
    const auto* b = find_event(r.net, "R:b");
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(b->pre, (std::set<ConditionId>{"L:b12"}));
    const auto* star = find_event(r.net, kAttachEventName);
    ASSERT_NE(star, nullptr);
    EXPECT_TRUE(star->pre.empty() && star->post.empty());
    EXPECT_TRUE(check(r.net).ok());
}

TEST(Attach, DisjointLabelsGiveDisjointUnion) {
    const auto r = attach(attach_left_net(), {{"b11", 0}, {"b12", 1}}, attach_right_net(), attach_right_labels());
    EXPECT_EQ(r.net.conditions.size(), 5u);
    EXPECT_EQ(r.net.events.size(), 3u);
}

TEST(Attach, CountLaws) {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_net(rng, {4, 4, true, "a"});
        const auto b = random_net(rng, {4, 4, true, "b"});
        const auto la = random_labeling(rng, a, label_range(0, 7));
        const auto lb = random_labeling(rng, b, label_range(0, 7));
        std::set<Label> ia, ib, both;
        for (const auto& [k, v] : la) ia.insert(v);
        for (const auto& [k, v] : lb) ib.insert(v);
        std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(), std::inserter(both, both.end()));
        const auto r = attach(a, la, b, lb);
        EXPECT_EQ(r.net.events.size(), a.events.size() + b.events.size() + 1);
        EXPECT_EQ(r.net.conditions.size(), a.conditions.size() + b.conditions.size() - both.size());
        EXPECT_TRUE(check(r.net).ok());
        check_labeling(r.net, r.labeling);
    }
}

TEST(Attach, RejectsBadLabeling) {
    EXPECT_THROW(attach(attach_left_net(), {{"b11", 1}}, attach_right_net(), attach_right_labels()), PreconditionError);
    EXPECT_THROW(attach(attach_left_net(), {{"b11", 1}, {"b12", 1}}, attach_right_net(), attach_right_labels()), PreconditionError);
}

TEST(ToDot, SingleEvent) {
    const auto dot = to_dot(make_net({"b"}, {{"e", {"b"}, {}}}));
    EXPECT_EQ(dot,
              "digraph net {\n"
              "  \"b:b\" [shape=circle, label=\"b\"];\n"
              "  \"e:e\" [shape=box, label=\"e\"];\n"
              "  \"b:b\" -> \"e:e\";\n"
              "}\n");
}

TEST(ToDot, EmptyNet) { EXPECT_EQ(to_dot(PetriNet{}), "digraph net {\n}\n"); }

TEST(ToDot, CountsNodesAndArcs) {
    const auto dot = to_dot(two_cycles_net());
    std::size_t nodes = 0, arcs = 0, pos = 0;
    while ((pos = dot.find("[shape=", pos)) != std::string::npos) ++nodes, ++pos;
    pos = 0;
    while ((pos = dot.find(" -> ", pos)) != std::string::npos) ++arcs, ++pos;
    EXPECT_EQ(nodes, 10u);
    EXPECT_EQ(arcs, 16u);
}

TEST(NetIo, ReadsSampleDocument) {
    const auto doc = read_net(slurp("decomposable.json"));
    EXPECT_EQ(doc.net.conditions.size(), 2u);
    EXPECT_EQ(doc.net.events.size(), 3u);
    ASSERT_TRUE(doc.labeling);
    EXPECT_EQ(doc.labeling->at("b1"), 1u);
    EXPECT_EQ(doc.net, decomposable_net());
}

TEST(NetIo, UnlabeledDocument) {
    const auto doc = read_net(slurp("two_cycles.json"));
    EXPECT_FALSE(doc.labeling);
    EXPECT_EQ(doc.net, two_cycles_net());
}

TEST(NetIo, RoundTrip) {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = random_net(rng, {5, 6, true, "b"});
        std::optional<Labeling> l;
        if (!n.conditions.empty() && rng.coin()) l = random_labeling(rng, n, label_range(0, 40));
        const auto doc = read_net(write_net(n, l));
        EXPECT_EQ(doc.net, n);
        EXPECT_EQ(doc.labeling, l);
    }
}

TEST(NetIo, Errors) {
    EXPECT_THROW(read_net("{"), ParseError);
    EXPECT_THROW(read_net("[]"), ParseError);
    EXPECT_THROW(read_net(R"({"events": []})"), ParseError);
    EXPECT_THROW(read_net(R"({"conditions": [{"id": 3}]})"), ParseError);
    EXPECT_THROW(read_net(R"({"conditions": [{"id": "b0", "label": -1}]})"), ParseError);
    EXPECT_THROW(read_net(R"({"conditions": [{"id": "b0", "label": 0}, {"id": "b1"}]})"), ParseError);
    EXPECT_THROW(read_net(R"({"conditions": [{"id": "b0", "label": 0}, {"id": "b0", "label": 1}]})"), StructureError);
    EXPECT_THROW(read_net(R"({"conditions": [{"id": "b0", "label": 0}, {"id": "b1", "label": 0}]})"), StructureError);
    EXPECT_THROW(read_net(R"({"conditions": [{"id": "b0"}], "events": [{"id": "e", "pre": ["zz"]}]})"), StructureError);
    EXPECT_THROW(read_net(R"({"conditions": [{"id": "b0"}], "events": [{"id": "e", "pre": ["b0", "b0"]}]})"), StructureError);
}

}  // namespace
}  // namespace netpoly
