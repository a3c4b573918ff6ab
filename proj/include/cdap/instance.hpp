#ifndef CDAP_INSTANCE_HPP
#define CDAP_INSTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cdap/matrix.hpp"

namespace cdap {

// A crossdock door assignment problem: I inbound doors, J outbound doors,
// M origins, N destinations, door-to-door distances and origin-to-destination
// trip counts. Immutable after construction; safe to share across threads.
struct Instance {
    int inbound_doors = 0;   // I
    int outbound_doors = 0;  // J
    int origins = 0;         // M
    int destinations = 0;    // N
    Matrix<double> distance;  // I x J, length units
    Matrix<long long> flow;   // M x N, trips

    // Throws std::invalid_argument naming the violated rule.
    void validate() const;

    // All flows zero: legal but degenerate (every assignment costs 0).
    bool zero_flow() const;

    bool operator==(const Instance& other) const;
};

enum class Wall { South, North, East, West };

const char* wall_name(Wall w);
Wall parse_wall(const std::string& name);

// Rectangular dock with doors at uniform pitch along the walls. Inbound
// doors occupy the leading slots of their wall; open doors (no assignment)
// extend the inbound wall without entering either index set. Distances are
// rectilinear between door centers.
struct LayoutSpec {
    double dock_width = 3.0;  // separation between the south and north walls
    double door_pitch = 1.0;  // center-to-center slot spacing along a wall
    Wall inbound_side = Wall::South;
    Wall outbound_side = Wall::North;
    int inbound_doors = 0;
    int outbound_doors = 0;
    int open_doors = 0;

    void validate() const;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct LayoutGeometry {
    std::vector<Point> inbound;
    std::vector<Point> outbound;
    std::vector<Point> open;
};

// Door center coordinates for a layout (also used to build distance tables).
LayoutGeometry layout_geometry(const LayoutSpec& layout);

// Uniform random instance: d in [1, max_distance], w in {0, ..., max_flow}.
// Identical arguments give bit-identical instances.
Instance generate_random(int inbound_doors, int outbound_doors, int origins, int destinations,
                         double max_distance, long long max_flow, std::uint64_t seed);

// Geometric instance: distances from the layout, flows as in generate_random.
Instance generate_from_layout(const LayoutSpec& layout, int origins, int destinations,
                              std::uint64_t flow_seed, long long max_flow);

// The door arrangement of the worked example: 6 inbound doors plus one open
// door on one wall, 9 outbound doors opposite. Pitch 1 and width 3 are
// conventions of this artifact, not measured data.
LayoutSpec figure1_layout();

// Canonical instance for the figure-1 layout (M=6, N=9, flow seed 1,
// max_flow 5); shipped with the repo as data/figure1.cdap.
Instance figure1_instance();

// CDAP text format. Reading throws ParseError with a 1-based line number;
// writing emits the canonical form (reals at 17 significant digits).
Instance read_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& inst);

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst);

// FNV-1a 64 over the canonical serialization, as a 16-digit hex string.
std::string instance_checksum(const Instance& inst);

}  // namespace cdap

#endif
