#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fiblab/tiling.hpp"

using namespace fiblab;

TEST_CASE("affine_step oracles") {
    AffineStep s = affine_step(1, 1);
    CHECK(s.matrix[0][0] == 1);
    CHECK(s.matrix[1][1] == 1);
    CHECK(s.matrix[2][2] == -1);
    for (int k = 0; k < 3; ++k) CHECK(s.offset[k] == 0);

    s = affine_step(1, 2);
    CHECK(s.matrix[0][0] == -2);
    CHECK(s.matrix[1][1] == -2);
    CHECK(s.matrix[2][2] == 2);
    CHECK(s.offset[0] == 3);
    CHECK(s.offset[1] == 3);
    CHECK(s.offset[2] == -1);

    s = affine_step(2, 3);
    Rat r = mkrat(3, 2);
    CHECK(s.matrix[0][1] == -r);
    CHECK(s.matrix[1][2] == r);
    CHECK(s.matrix[2][0] == -r);
    CHECK(s.offset[0] == r);
    CHECK(s.offset[1] == -r);
    CHECK(s.offset[2] == r);
}

TEST_CASE("affine_step domain errors") {
    CHECK_THROWS_AS(affine_step(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(affine_step(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(affine_step(1, 0), std::invalid_argument);
}

TEST_CASE("matrix shape: MtM is a scaled identity, n <= 40") {
    for (int i = 1; i <= 3; ++i)
        for (long long n = 1; n <= 40; ++n) {
            AffineStep s = affine_step(i, n);
            Rat r2 = Rat(seq::fib(n + 1) * seq::fib(n + 1)) / Rat(seq::fib(n) * seq::fib(n));
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    Rat acc(0);
                    for (int k = 0; k < 3; ++k) acc += s.matrix[k][a] * s.matrix[k][b];
                    CHECK(acc == (a == b ? r2 : Rat(0)));
                }
        }
}

TEST_CASE("generate hand-derived prefixes") {
    auto boxes = generate(1, 3);
    REQUIRE(boxes.size() == 3);
    auto box_is = [&](const Cuboid& b, long xlo, long xhi, long ylo, long yhi, long zlo,
                      long zhi) {
        return b.lo[0] == xlo && b.hi[0] == xhi && b.lo[1] == ylo && b.hi[1] == yhi &&
               b.lo[2] == zlo && b.hi[2] == zhi;
    };
    CHECK(box_is(boxes[0], 0, 1, 0, 1, 0, 1));
    CHECK(box_is(boxes[1], 0, 1, 0, 1, -1, 0));
    CHECK(box_is(boxes[2], 1, 3, 1, 3, -3, -1));
    CHECK_THROWS_AS(generate(1, 0), std::invalid_argument);
}

TEST_CASE("map-1 centers for N=5") {
    auto boxes = generate(1, 5);
    Rat want[5][3] = {{mkrat(1, 2), mkrat(1, 2), mkrat(1, 2)},
                      {mkrat(1, 2), mkrat(1, 2), mkrat(-1, 2)},
                      {mkrat(2, 1), mkrat(2, 1), mkrat(-2, 1)},
                      {mkrat(3, 1), mkrat(3, 1), mkrat(3, 1)},
                      {mkrat(-7, 3), mkrat(-7, 3), mkrat(13, 3)}};
    for (int i = 0; i < 5; ++i) {
        Vec3 c = boxes[i].center();
        for (int k = 0; k < 3; ++k) CHECK(c[k] == want[i][k]);
    }
}

TEST_CASE("exact side law: side(Cn) = F_n for n <= 40, every map") {
    for (int i = 1; i <= 3; ++i) {
        auto boxes = generate(i, 40);
        for (auto& b : boxes) {
            Rat side = b.hi[0] - b.lo[0];
            CHECK(side == Rat(seq::fib(b.n)));
            CHECK(b.hi[1] - b.lo[1] == side);
            CHECK(b.hi[2] - b.lo[2] == side);
        }
    }
}

TEST_CASE("analyze: disjointness, coplanarity, ratios") {
    for (int i = 1; i <= 3; ++i) {
        PackingReport rep = analyze(generate(i, 15), i);
        CHECK(rep.disjoint);
        CHECK(!rep.offending_pair.has_value());
        CHECK(rep.sides_are_cubes);
        if (i == 1) CHECK(rep.coplanar);
        PackingReport rep60 = analyze(generate(i, 60), i);
        REQUIRE(!rep60.two_step_ratios.empty());
        CHECK(std::fabs(rep60.two_step_ratios.back() - 2.6180339887) < 1e-4);
    }
    // single box: vacuous disjointness, no ratios
    PackingReport one = analyze(generate(2, 1), 2);
    CHECK(one.disjoint);
    CHECK(one.two_step_ratios.empty());
}

TEST_CASE("overlapping boxes are reported with the offending pair") {
    std::vector<Cuboid> boxes = generate(1, 2);
    Cuboid clash = boxes[0];
    clash.n = 3;
    boxes.push_back(clash);  // duplicate of the unit cube
    PackingReport rep = analyze(boxes, 1);
    CHECK(!rep.disjoint);
    REQUIRE(rep.offending_pair.has_value());
    CHECK(rep.offending_pair->first == 1);
    CHECK(rep.offending_pair->second == 3);
}

TEST_CASE("json export and exact round-trip") {
    std::string js = export_boxes(generate(1, 1), "json");
    auto arr = nlohmann::json::parse(js);
    REQUIRE(arr.size() == 1);
    CHECK(arr[0]["min"] == nlohmann::json({"0/1", "0/1", "0/1"}));
    CHECK(arr[0]["max"] == nlohmann::json({"1/1", "1/1", "1/1"}));

    auto orig = generate(3, 9);
    auto back = import_boxes_json(export_boxes(orig, "json"));
    REQUIRE(back.size() == orig.size());
    for (size_t k = 0; k < back.size(); ++k)
        for (int a = 0; a < 3; ++a) {
            CHECK(back[k].lo[a] == orig[k].lo[a]);
            CHECK(back[k].hi[a] == orig[k].hi[a]);
        }
}

TEST_CASE("obj export counting contract") {
    std::string obj = export_boxes(generate(1, 2), "obj");
    int nv = 0, nf = 0;
    std::vector<std::string> groups;
    std::istringstream ss(obj);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.rfind("v ", 0) == 0) ++nv;
        if (line.rfind("f ", 0) == 0) ++nf;
        if (line.rfind("g ", 0) == 0) groups.push_back(line.substr(2));
    }
    CHECK(nv == 16);
    CHECK(nf == 12);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0] == "cube_1");
    CHECK(groups[1] == "cube_2");
    CHECK_THROWS_AS(export_boxes(generate(1, 1), "stl"), std::invalid_argument);
}
