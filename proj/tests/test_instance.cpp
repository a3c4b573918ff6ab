#include <cmath>
#include <sstream>

#include "cdap/errors.hpp"
#include "cdap/instance.hpp"
#include "doctest.h"

using namespace cdap;

TEST_CASE("generate_random smallest legal dimensions") {
    const Instance inst = generate_random(1, 1, 1, 1, 5.0, 3, 7);
    CHECK(inst.inbound_doors == 1);
    CHECK(inst.outbound_doors == 1);
    CHECK(inst.distance.rows() == 1);
    CHECK(inst.distance.cols() == 1);
    CHECK(inst.flow.rows() == 1);
    CHECK(inst.flow.cols() == 1);
}

TEST_CASE("generate_random is deterministic per seed") {
    const Instance a = generate_random(3, 3, 2, 2, 10.0, 5, 42);
    const Instance b = generate_random(3, 3, 2, 2, 10.0, 5, 42);
    CHECK(a == b);
    const Instance c = generate_random(3, 3, 2, 2, 10.0, 5, 43);
    CHECK(a != c);
}

TEST_CASE("generate_random rejects infeasible dimensions") {
    CHECK_THROWS_WITH_AS(generate_random(2, 3, 3, 1, 10.0, 5, 1), "I >= M violated",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(generate_random(3, 1, 1, 2, 10.0, 5, 1), "J >= N violated",
                         std::invalid_argument);
    CHECK_THROWS_AS(generate_random(3, 3, 2, 2, -1.0, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_random(3, 3, 2, 2, 10.0, 0, 1), std::invalid_argument);
}

TEST_CASE("generate_random draws stay in range") {
    const Instance inst = generate_random(6, 7, 4, 5, 12.5, 9, 11);
    for (int i = 0; i < inst.inbound_doors; ++i)
        for (int j = 0; j < inst.outbound_doors; ++j) {
            CHECK(inst.distance(i, j) >= 1.0);
            CHECK(inst.distance(i, j) <= 12.5);
        }
    for (int m = 0; m < inst.origins; ++m)
        for (int n = 0; n < inst.destinations; ++n) {
            CHECK(inst.flow(m, n) >= 0);
            CHECK(inst.flow(m, n) <= 9);
        }
}

TEST_CASE("figure-1 layout has 6 inbound and 9 outbound doors") {
    const Instance inst = figure1_instance();
    CHECK(inst.inbound_doors == 6);
    CHECK(inst.outbound_doors == 9);
    CHECK(inst.origins == 6);
    CHECK(inst.destinations == 9);
    // Doors at unit pitch across a width-3 dock: d = |i - j| + 3.
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 9; ++j) CHECK(inst.distance(i, j) == std::abs(i - j) + 3.0);
}

TEST_CASE("same-wall neighbours sit one pitch apart") {
    LayoutSpec layout;
    layout.dock_width = 5.0;
    layout.door_pitch = 2.5;
    layout.inbound_side = Wall::South;
    layout.outbound_side = Wall::South;
    layout.inbound_doors = 1;
    layout.outbound_doors = 1;
    const Instance inst = generate_from_layout(layout, 1, 1, 1, 5);
    CHECK(inst.distance(0, 0) == 2.5);
}

TEST_CASE("doors directly opposite are one dock width apart") {
    LayoutSpec layout;
    layout.dock_width = 7.0;
    layout.door_pitch = 1.5;
    layout.inbound_doors = 4;
    layout.outbound_doors = 4;
    const Instance inst = generate_from_layout(layout, 4, 4, 1, 5);
    // Slot k on each wall shares its position along the wall, so the
    // rectilinear distance of aligned doors is exactly the width.
    for (int k = 0; k < 4; ++k) CHECK(inst.distance(k, k) == 7.0);
    // Hand-computed off-diagonal: |x_i - x_j| + width.
    CHECK(inst.distance(0, 3) == 3 * 1.5 + 7.0);
}

TEST_CASE("layout distances match coordinates and obey the triangle inequality") {
    LayoutSpec layout = figure1_layout();
    const LayoutGeometry geo = layout_geometry(layout);
    REQUIRE(geo.inbound.size() == 6);
    REQUIRE(geo.outbound.size() == 9);
    REQUIRE(geo.open.size() == 1);
    auto l1 = [](const Point& a, const Point& b) {
        return std::abs(a.x - b.x) + std::abs(a.y - b.y);
    };
    const Instance inst = generate_from_layout(layout, 6, 9, 1, 5);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 9; ++j) {
            CHECK(inst.distance(i, j) == l1(geo.inbound[i], geo.outbound[j]));
            // Quadrilateral form of the triangle inequality on a bipartite table.
            for (int i2 = 0; i2 < 6; ++i2)
                for (int j2 = 0; j2 < 9; ++j2)
                    CHECK(inst.distance(i, j) <=
                          inst.distance(i, j2) + inst.distance(i2, j2) + inst.distance(i2, j));
        }
}

TEST_CASE("wall swap leaves the distance table unchanged") {
    LayoutSpec layout = figure1_layout();
    LayoutSpec swapped = layout;
    swapped.inbound_side = Wall::North;
    swapped.outbound_side = Wall::South;
    const Instance a = generate_from_layout(layout, 6, 9, 1, 5);
    const Instance b = generate_from_layout(swapped, 6, 9, 1, 5);
    CHECK(a.distance == b.distance);
}

TEST_CASE("layout refuses too few doors") {
    LayoutSpec layout = figure1_layout();
    CHECK_THROWS_AS(generate_from_layout(layout, 7, 9, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(generate_from_layout(layout, 6, 10, 1, 5), std::invalid_argument);
}

TEST_CASE("minimal instance file parses") {
    std::istringstream in("CDAP 1\n1 1 1 1\n5.0\n3\n");
    const Instance inst = read_instance(in);
    CHECK(inst.distance(0, 0) == 5.0);
    CHECK(inst.flow(0, 0) == 3);
}

TEST_CASE("comments and blank lines are ignored") {
    std::istringstream in("# a comment\nCDAP 1 # trailing\n\n1 1 1 1\n5.0\n3\n# done\n");
    const Instance inst = read_instance(in);
    CHECK(inst.flow(0, 0) == 3);
}

TEST_CASE("file round-trip is lossless") {
    const Instance inst = generate_random(5, 4, 3, 2, 10.0, 5, 42);
    std::ostringstream out;
    write_instance(out, inst);
    std::istringstream in(out.str());
    const Instance back = read_instance(in);
    CHECK(inst == back);
    // The canonical form is a fixed point of write(read(.)).
    std::ostringstream out2;
    write_instance(out2, back);
    CHECK(out.str() == out2.str());
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("fractional flow") {
        std::istringstream in("CDAP 1\n1 1 1 1\n5.0\n2.5\n");
        try {
            read_instance(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
            CHECK(std::string(e.what()).find("integer") != std::string::npos);
        }
    }
    SUBCASE("bad header") {
        std::istringstream in("CDPA 1\n1 1 1 1\n5.0\n3\n");
        try {
            read_instance(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("wrong version") {
        std::istringstream in("CDAP 2\n1 1 1 1\n5.0\n3\n");
        CHECK_THROWS_AS(read_instance(in), ParseError);
    }
    SUBCASE("dimension mismatch in a distance row") {
        std::istringstream in("CDAP 1\n2 2 1 1\n1.0 2.0\n3.0\n4\n");
        try {
            read_instance(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
        }
    }
    SUBCASE("negative distance") {
        std::istringstream in("CDAP 1\n1 1 1 1\n-5.0\n3\n");
        try {
            read_instance(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("negative flow") {
        std::istringstream in("CDAP 1\n1 1 1 1\n5.0\n-3\n");
        CHECK_THROWS_AS(read_instance(in), ParseError);
    }
    SUBCASE("truncated file") {
        std::istringstream in("CDAP 1\n2 2 2 2\n1.0 2.0\n");
        CHECK_THROWS_AS(read_instance(in), ParseError);
    }
    SUBCASE("trailing garbage") {
        std::istringstream in("CDAP 1\n1 1 1 1\n5.0\n3\n9 9\n");
        try {
            read_instance(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 5);
        }
    }
    SUBCASE("infeasible dimensions") {
        std::istringstream in("CDAP 1\n1 1 2 1\n5.0\n3\n3\n");
        try {
            read_instance(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("I >= M") != std::string::npos);
        }
    }
}

TEST_CASE("scientific notation round-trips") {
    std::istringstream in("CDAP 1\n1 1 1 1\n1.25e-3\n3\n");
    const Instance inst = read_instance(in);
    CHECK(inst.distance(0, 0) == 1.25e-3);
}

TEST_CASE("zero flow is legal but flagged") {
    std::istringstream in("CDAP 1\n1 1 1 1\n5.0\n0\n");
    const Instance inst = read_instance(in);
    CHECK(inst.zero_flow());
    CHECK_FALSE(generate_random(2, 2, 1, 1, 5.0, 100, 3).zero_flow());
}

TEST_CASE("the shipped figure-1 file matches its generator") {
    const Instance shipped = read_instance_file(std::string(CDAP_SOURCE_DIR) + "/data/figure1.cdap");
    CHECK(shipped == figure1_instance());
}

TEST_CASE("checksum is stable and content sensitive") {
    const Instance a = generate_random(3, 3, 2, 2, 10.0, 5, 42);
    Instance b = a;
    CHECK(instance_checksum(a) == instance_checksum(b));
    b.flow(0, 0) += 1;
    CHECK(instance_checksum(a) != instance_checksum(b));
}
