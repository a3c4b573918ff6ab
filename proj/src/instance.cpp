#include "cdap/instance.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cdap/errors.hpp"
#include "cdap/rng.hpp"
#include "cdap/text.hpp"

namespace cdap {

void Instance::validate() const {
    if (inbound_doors < 1) throw std::invalid_argument("I must be positive");
    if (outbound_doors < 1) throw std::invalid_argument("J must be positive");
    if (origins < 1) throw std::invalid_argument("M must be positive");
    if (destinations < 1) throw std::invalid_argument("N must be positive");
    if (inbound_doors < origins) throw std::invalid_argument("I >= M violated");
    if (outbound_doors < destinations) throw std::invalid_argument("J >= N violated");
    if (distance.rows() != inbound_doors || distance.cols() != outbound_doors)
        throw std::invalid_argument("distance matrix must be I x J");
    if (flow.rows() != origins || flow.cols() != destinations)
        throw std::invalid_argument("flow matrix must be M x N");
    for (int i = 0; i < inbound_doors; ++i)
        for (int j = 0; j < outbound_doors; ++j) {
            const double d = distance(i, j);
            if (!(d >= 0.0) || !std::isfinite(d))
                throw std::invalid_argument("distance entries must be finite and non-negative");
        }
    for (int m = 0; m < origins; ++m)
        for (int n = 0; n < destinations; ++n)
            if (flow(m, n) < 0) throw std::invalid_argument("flow entries must be non-negative");
}

bool Instance::zero_flow() const {
    for (int m = 0; m < origins; ++m)
        for (int n = 0; n < destinations; ++n)
            if (flow(m, n) > 0) return false;
    return true;
}

bool Instance::operator==(const Instance& other) const {
    return inbound_doors == other.inbound_doors && outbound_doors == other.outbound_doors &&
           origins == other.origins && destinations == other.destinations &&
           distance == other.distance && flow == other.flow;
}

const char* wall_name(Wall w) {
    switch (w) {
        case Wall::South: return "south";
        case Wall::North: return "north";
        case Wall::East: return "east";
        case Wall::West: return "west";
    }
    return "?";
}

Wall parse_wall(const std::string& name) {
    if (name == "south") return Wall::South;
    if (name == "north") return Wall::North;
    if (name == "east") return Wall::East;
    if (name == "west") return Wall::West;
    throw std::invalid_argument("unknown wall '" + name + "' (expected south|north|east|west)");
}

void LayoutSpec::validate() const {
    if (dock_width <= 0.0) throw std::invalid_argument("dock_width must be positive");
    if (door_pitch <= 0.0) throw std::invalid_argument("door_pitch must be positive");
    if (inbound_doors < 1) throw std::invalid_argument("layout needs at least one inbound door");
    if (outbound_doors < 1) throw std::invalid_argument("layout needs at least one outbound door");
    if (open_doors < 0) throw std::invalid_argument("open door count cannot be negative");
}

namespace {

bool horizontal(Wall w) { return w == Wall::South || w == Wall::North; }

// Slot k on a wall, 0-based from the wall's origin corner.
Point slot_position(Wall w, int slot, double pitch, double length_x, double length_y) {
    const double along = (slot + 0.5) * pitch;
    switch (w) {
        case Wall::South: return {along, 0.0};
        case Wall::North: return {along, length_y};
        case Wall::West: return {0.0, along};
        case Wall::East: return {length_x, along};
    }
    return {};
}

}  // namespace

LayoutGeometry layout_geometry(const LayoutSpec& layout) {
    layout.validate();

    // Slots are allocated per wall: inbound doors first, then outbound doors
    // when both roles share a wall, then open doors on the inbound wall.
    int slots_inbound_wall = layout.inbound_doors + layout.open_doors;
    int slots_outbound_wall = layout.outbound_doors;
    int outbound_first_slot = 0;
    if (layout.inbound_side == layout.outbound_side) {
        outbound_first_slot = layout.inbound_doors;
        slots_inbound_wall += layout.outbound_doors;
        slots_outbound_wall = slots_inbound_wall;
    }
    const int open_first_slot = (layout.inbound_side == layout.outbound_side)
                                    ? layout.inbound_doors + layout.outbound_doors
                                    : layout.inbound_doors;

    // Dock footprint: walls carrying doors run along their axis for as many
    // slots as they hold; dock_width separates a wall from the one opposite.
    double extent_x = layout.door_pitch;
    double extent_y = layout.dock_width;
    auto grow = [&](Wall w, int slots) {
        const double run = slots * layout.door_pitch;
        if (horizontal(w)) {
            extent_x = std::max(extent_x, run);
        } else {
            extent_x = std::max(extent_x, layout.dock_width);
            extent_y = std::max(extent_y, run);
        }
    };
    grow(layout.inbound_side, slots_inbound_wall);
    grow(layout.outbound_side, slots_outbound_wall);

    LayoutGeometry geo;
    for (int i = 0; i < layout.inbound_doors; ++i)
        geo.inbound.push_back(slot_position(layout.inbound_side, i, layout.door_pitch, extent_x, extent_y));
    for (int j = 0; j < layout.outbound_doors; ++j)
        geo.outbound.push_back(
            slot_position(layout.outbound_side, outbound_first_slot + j, layout.door_pitch, extent_x, extent_y));
    for (int k = 0; k < layout.open_doors; ++k)
        geo.open.push_back(
            slot_position(layout.inbound_side, open_first_slot + k, layout.door_pitch, extent_x, extent_y));
    return geo;
}

namespace {

Matrix<long long> random_flow(int origins, int destinations, long long max_flow, Rng& rng) {
    Matrix<long long> w(origins, destinations);
    for (int m = 0; m < origins; ++m)
        for (int n = 0; n < destinations; ++n) w(m, n) = rng.uniform_int(0, max_flow);
    return w;
}

}  // namespace

Instance generate_random(int inbound_doors, int outbound_doors, int origins, int destinations,
                         double max_distance, long long max_flow, std::uint64_t seed) {
    if (origins < 1) throw std::invalid_argument("M >= 1 violated");
    if (destinations < 1) throw std::invalid_argument("N >= 1 violated");
    if (inbound_doors < origins) throw std::invalid_argument("I >= M violated");
    if (outbound_doors < destinations) throw std::invalid_argument("J >= N violated");
    if (!(max_distance > 0.0)) throw std::invalid_argument("max_distance must be positive");
    if (max_flow < 1) throw std::invalid_argument("max_flow >= 1 violated");

    Rng rng(derive_seed(seed, 0x1157A9CEULL));
    Instance inst;
    inst.inbound_doors = inbound_doors;
    inst.outbound_doors = outbound_doors;
    inst.origins = origins;
    inst.destinations = destinations;
    inst.distance = Matrix<double>(inbound_doors, outbound_doors);
    for (int i = 0; i < inbound_doors; ++i)
        for (int j = 0; j < outbound_doors; ++j) inst.distance(i, j) = rng.uniform_real(1.0, max_distance);
    inst.flow = random_flow(origins, destinations, max_flow, rng);
    inst.validate();
    return inst;
}

Instance generate_from_layout(const LayoutSpec& layout, int origins, int destinations,
                              std::uint64_t flow_seed, long long max_flow) {
    if (origins < 1) throw std::invalid_argument("M >= 1 violated");
    if (destinations < 1) throw std::invalid_argument("N >= 1 violated");
    if (layout.inbound_doors < origins)
        throw std::invalid_argument("layout places fewer inbound doors than origins (I >= M violated)");
    if (layout.outbound_doors < destinations)
        throw std::invalid_argument("layout places fewer outbound doors than destinations (J >= N violated)");
    if (max_flow < 1) throw std::invalid_argument("max_flow >= 1 violated");

    const LayoutGeometry geo = layout_geometry(layout);
    Instance inst;
    inst.inbound_doors = layout.inbound_doors;
    inst.outbound_doors = layout.outbound_doors;
    inst.origins = origins;
    inst.destinations = destinations;
    inst.distance = Matrix<double>(layout.inbound_doors, layout.outbound_doors);
    for (int i = 0; i < layout.inbound_doors; ++i)
        for (int j = 0; j < layout.outbound_doors; ++j) {
            const Point a = geo.inbound[i];
            const Point b = geo.outbound[j];
            inst.distance(i, j) = std::abs(a.x - b.x) + std::abs(a.y - b.y);
        }
    Rng rng(derive_seed(flow_seed, 0xF104ULL));
    inst.flow = random_flow(origins, destinations, max_flow, rng);
    inst.validate();
    return inst;
}

LayoutSpec figure1_layout() {
    LayoutSpec layout;
    layout.dock_width = 3.0;
    layout.door_pitch = 1.0;
    layout.inbound_side = Wall::South;
    layout.outbound_side = Wall::North;
    layout.inbound_doors = 6;
    layout.outbound_doors = 9;
    layout.open_doors = 1;
    return layout;
}

Instance figure1_instance() { return generate_from_layout(figure1_layout(), 6, 9, 1, 5); }

namespace {

// One logical line of the instance file, comments stripped.
struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        Line line;
        line.number = number;
        std::istringstream tokens(raw);
        std::string tok;
        while (tokens >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

long long parse_int_token(const std::string& tok, int line, const char* what) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || errno != 0)
        throw ParseError(line, std::string(what) + " must be integer, got '" + tok + "'");
    return v;
}

double parse_real_token(const std::string& tok, int line, const char* what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || errno == ERANGE || !std::isfinite(v))
        throw ParseError(line, std::string(what) + " must be a finite real, got '" + tok + "'");
    return v;
}

}  // namespace

Instance read_instance(std::istream& in) {
    const std::vector<Line> lines = tokenize(in);
    std::size_t cursor = 0;
    auto next_line = [&]() -> const Line& {
        if (cursor >= lines.size()) throw ParseError(0, "unexpected end of file");
        return lines[cursor++];
    };

    const Line& header = next_line();
    if (header.tokens.size() != 2 || header.tokens[0] != "CDAP")
        throw ParseError(header.number, "expected header 'CDAP 1'");
    if (header.tokens[1] != "1")
        throw ParseError(header.number, "unsupported format version '" + header.tokens[1] + "'");

    const Line& dims = next_line();
    if (dims.tokens.size() != 4) throw ParseError(dims.number, "expected four integers I J M N");
    Instance inst;
    const long long I = parse_int_token(dims.tokens[0], dims.number, "I");
    const long long J = parse_int_token(dims.tokens[1], dims.number, "J");
    const long long M = parse_int_token(dims.tokens[2], dims.number, "M");
    const long long N = parse_int_token(dims.tokens[3], dims.number, "N");
    if (I < 1 || J < 1 || M < 1 || N < 1) throw ParseError(dims.number, "dimensions must be positive");
    if (I < M) throw ParseError(dims.number, "I >= M violated");
    if (J < N) throw ParseError(dims.number, "J >= N violated");
    inst.inbound_doors = static_cast<int>(I);
    inst.outbound_doors = static_cast<int>(J);
    inst.origins = static_cast<int>(M);
    inst.destinations = static_cast<int>(N);

    inst.distance = Matrix<double>(inst.inbound_doors, inst.outbound_doors);
    for (int i = 0; i < inst.inbound_doors; ++i) {
        const Line& row = next_line();
        if (static_cast<int>(row.tokens.size()) != inst.outbound_doors)
            throw ParseError(row.number, "distance row " + std::to_string(i + 1) + " needs " +
                                             std::to_string(inst.outbound_doors) + " entries, got " +
                                             std::to_string(row.tokens.size()));
        for (int j = 0; j < inst.outbound_doors; ++j) {
            const double v = parse_real_token(row.tokens[j], row.number, "distance");
            if (v < 0.0) throw ParseError(row.number, "distance must be non-negative");
            inst.distance(i, j) = v;
        }
    }

    inst.flow = Matrix<long long>(inst.origins, inst.destinations);
    for (int m = 0; m < inst.origins; ++m) {
        const Line& row = next_line();
        if (static_cast<int>(row.tokens.size()) != inst.destinations)
            throw ParseError(row.number, "flow row " + std::to_string(m + 1) + " needs " +
                                             std::to_string(inst.destinations) + " entries, got " +
                                             std::to_string(row.tokens.size()));
        for (int n = 0; n < inst.destinations; ++n) {
            const long long v = parse_int_token(row.tokens[n], row.number, "flow");
            if (v < 0) throw ParseError(row.number, "flow must be non-negative");
            inst.flow(m, n) = v;
        }
    }

    if (cursor != lines.size())
        throw ParseError(lines[cursor].number, "unexpected trailing content");
    inst.validate();
    return inst;
}

void write_instance(std::ostream& out, const Instance& inst) {
    inst.validate();
    out << "CDAP 1\n";
    out << inst.inbound_doors << ' ' << inst.outbound_doors << ' ' << inst.origins << ' '
        << inst.destinations << '\n';
    for (int i = 0; i < inst.inbound_doors; ++i) {
        for (int j = 0; j < inst.outbound_doors; ++j) {
            if (j) out << ' ';
            out << format_real17(inst.distance(i, j));
        }
        out << '\n';
    }
    for (int m = 0; m < inst.origins; ++m) {
        for (int n = 0; n < inst.destinations; ++n) {
            if (n) out << ' ';
            out << inst.flow(m, n);
        }
        out << '\n';
    }
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open instance file '" + path + "'");
    return read_instance(in);
}

void write_instance_file(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
    write_instance(out, inst);
}

std::string instance_checksum(const Instance& inst) {
    std::ostringstream text;
    write_instance(text, inst);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace cdap
