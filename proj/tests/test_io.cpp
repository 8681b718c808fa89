#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "zp2/io.hpp"

using namespace zp2;
using io::json;

TEST(Io, RingElementRoundTrip) {
    std::mt19937_64 rng(11);
    for (int p : {3, 5}) {
        const auto R = make_ring(p);
        for (int k = 0; k < 50; ++k) {
            RingElement x = sample::random_element(R, rng).with_precision(static_cast<int>(rng() % 73));
            json j = io::to_json(x);
            RingElement y = io::ring_element_from_json(json::parse(j.dump()));
            EXPECT_TRUE(x.same_as(y));
            EXPECT_EQ(io::to_json(y), j);
        }
    }
}

TEST(Io, RingElementShape) {
    const auto R = make_ring(3);
    json j = io::to_json(R.pi());
    EXPECT_EQ(j["p"], 3);
    EXPECT_EQ(j["M"], 12);
    EXPECT_EQ(j["digits"].size(), 6u);
    EXPECT_EQ(j["digits"][1], "1");
    EXPECT_EQ(j["prec"], 72);
}

TEST(Io, RingElementRejectsBadInput) {
    json j = io::to_json(make_ring(3).one());
    json bad = j;
    bad["digits"][0] = "-1";
    EXPECT_THROW(io::ring_element_from_json(bad), ValidationError);
    bad = j;
    bad["digits"].erase(0);
    EXPECT_THROW(io::ring_element_from_json(bad), ValidationError);
    bad = j;
    bad["p"] = 4;
    EXPECT_THROW(io::ring_element_from_json(bad), ValidationError);
    bad = j;
    bad.erase("prec");
    EXPECT_THROW(io::ring_element_from_json(bad), ValidationError);
}

TEST(Io, DescriptorRoundTrip) {
    for (int p : {3, 5}) {
        const auto R = make_ring(p);
        for (const auto& d : enumerate_models(R, 3)) {
            json j = io::to_json(d);
            EXPECT_EQ(io::descriptor_from_json(json::parse(j.dump())), d);
        }
    }
    const auto R = make_ring(3);
    json j = io::to_json(make_descriptor(R, 3, 3, eta(R), 1));
    EXPECT_EQ(j["a_digits"], json::array({0, 1, 1}));
}

TEST(Io, DescriptorRejectsBadInput) {
    const auto R = make_ring(3);
    json j = io::to_json(make_descriptor(R, 3, 3, eta(R), 1));
    json bad = j;
    bad["n"] = 4;
    EXPECT_THROW(io::descriptor_from_json(bad), ValidationError);
    bad = j;
    bad["a_digits"] = json::array({0, 1});
    EXPECT_THROW(io::descriptor_from_json(bad), ValidationError);
    bad = j;
    bad["a_digits"] = json::array({0, 3, 1});
    EXPECT_THROW(io::descriptor_from_json(bad), ValidationError);
    bad = j;
    bad["j"] = 3;
    EXPECT_THROW(io::descriptor_from_json(bad), ValidationError);
}

TEST(Io, FiberClassRoundTrip) {
    std::vector<FiberClass> cs = {{FiberTag::MuPExtension, 2},
                                  {FiberTag::TrivialExtension},
                                  {FiberTag::AlphaPExtension, 0, 1, 2},
                                  {FiberTag::ZpByZp, 0, 0, 0, 0, 1}};
    for (const auto& c : cs) EXPECT_EQ(io::fiber_class_from_json(json::parse(io::to_json(c).dump())), c);
    EXPECT_EQ(io::to_json(cs[3]).dump(), R"({"a":0,"b":1,"tag":"ZpByZp"})");
    EXPECT_THROW(io::fiber_class_from_json(json{{"tag", "Other"}}), ValidationError);
}

TEST(Io, PresentationShape) {
    const auto R = make_ring(3);
    json j = io::to_json(build_extension(make_descriptor(R, 3, 3, eta(R), 1)));
    EXPECT_EQ(j["generators"], json::array({"S1", "S2"}));
    EXPECT_EQ(j["relations"].size(), 2u);
    EXPECT_EQ(j["comult"][0]["num"][0]["exp"].size(), 4u);
    EXPECT_EQ(j["counit"].size(), 2u);
}
