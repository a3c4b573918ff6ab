#include "cdap/assignment.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cdap/errors.hpp"
#include "cdap/rng.hpp"

namespace cdap {

namespace {

void validate_side(const std::vector<int>& v, int count, int doors, const char* entity,
                   const char* door_kind) {
    if (static_cast<int>(v.size()) != count)
        throw FeasibilityError(std::string(entity) + " map has " + std::to_string(v.size()) +
                               " entries, expected " + std::to_string(count));
    std::vector<int> owner(doors, -1);
    for (int k = 0; k < count; ++k) {
        const int door = v[k];
        if (door < 0 || door >= doors)
            throw FeasibilityError(std::string(entity) + " " + std::to_string(k + 1) + " assigned " +
                                   door_kind + " door " + std::to_string(door + 1) + ", valid range is 1.." +
                                   std::to_string(doors));
        if (owner[door] >= 0)
            throw FeasibilityError(std::string(entity) + " " + std::to_string(k + 1) + " reuses " +
                                   door_kind + " door " + std::to_string(door + 1) + " already held by " +
                                   entity + " " + std::to_string(owner[door] + 1));
        owner[door] = k;
    }
}

}  // namespace

void validate_assignment(const Instance& inst, const Assignment& a) {
    validate_side(a.x, inst.origins, inst.inbound_doors, "origin", "inbound");
    validate_side(a.y, inst.destinations, inst.outbound_doors, "destination", "outbound");
}

bool is_feasible(const Instance& inst, const Assignment& a) {
    try {
        validate_assignment(inst, a);
        return true;
    } catch (const FeasibilityError&) {
        return false;
    }
}

std::string move_to_string(const Move& mv) {
    std::ostringstream out;
    switch (mv.kind) {
        case MoveKind::SwapOrigins: out << "swap_origins(" << mv.a + 1 << "," << mv.b + 1 << ")"; break;
        case MoveKind::SwapDestinations:
            out << "swap_destinations(" << mv.a + 1 << "," << mv.b + 1 << ")";
            break;
        case MoveKind::RelocateOrigin:
            out << "relocate_origin(" << mv.a + 1 << "->door " << mv.b + 1 << ")";
            break;
        case MoveKind::RelocateDestination:
            out << "relocate_destination(" << mv.a + 1 << "->door " << mv.b + 1 << ")";
            break;
    }
    return out.str();
}

namespace {

bool door_in_use(const std::vector<int>& v, int door) {
    return std::find(v.begin(), v.end(), door) != v.end();
}

}  // namespace

void validate_move(const Instance& inst, const Assignment& a, const Move& mv) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("invalid move " + move_to_string(mv) + ": " + why);
    };
    switch (mv.kind) {
        case MoveKind::SwapOrigins:
            if (mv.a < 0 || mv.a >= inst.origins || mv.b < 0 || mv.b >= inst.origins)
                fail("origin index out of range");
            break;
        case MoveKind::SwapDestinations:
            if (mv.a < 0 || mv.a >= inst.destinations || mv.b < 0 || mv.b >= inst.destinations)
                fail("destination index out of range");
            break;
        case MoveKind::RelocateOrigin:
            if (mv.a < 0 || mv.a >= inst.origins) fail("origin index out of range");
            if (mv.b < 0 || mv.b >= inst.inbound_doors) fail("door index out of range");
            if (door_in_use(a.x, mv.b)) fail("target inbound door is occupied");
            break;
        case MoveKind::RelocateDestination:
            if (mv.a < 0 || mv.a >= inst.destinations) fail("destination index out of range");
            if (mv.b < 0 || mv.b >= inst.outbound_doors) fail("door index out of range");
            if (door_in_use(a.y, mv.b)) fail("target outbound door is occupied");
            break;
    }
}

Assignment apply(const Assignment& a, const Move& mv) {
    Assignment out = a;
    switch (mv.kind) {
        case MoveKind::SwapOrigins: std::swap(out.x[mv.a], out.x[mv.b]); break;
        case MoveKind::SwapDestinations: std::swap(out.y[mv.a], out.y[mv.b]); break;
        case MoveKind::RelocateOrigin: out.x[mv.a] = mv.b; break;
        case MoveKind::RelocateDestination: out.y[mv.a] = mv.b; break;
    }
    return out;
}

std::vector<Move> enumerate_moves(const Instance& inst, const Assignment& a) {
    std::vector<Move> moves;
    const int M = inst.origins;
    const int N = inst.destinations;
    for (int m1 = 0; m1 < M; ++m1)
        for (int m2 = m1 + 1; m2 < M; ++m2) moves.push_back({MoveKind::SwapOrigins, m1, m2});
    for (int n1 = 0; n1 < N; ++n1)
        for (int n2 = n1 + 1; n2 < N; ++n2) moves.push_back({MoveKind::SwapDestinations, n1, n2});

    std::vector<char> x_used(inst.inbound_doors, 0), y_used(inst.outbound_doors, 0);
    for (const int door : a.x) x_used[door] = 1;
    for (const int door : a.y) y_used[door] = 1;
    for (int m = 0; m < M; ++m)
        for (int door = 0; door < inst.inbound_doors; ++door)
            if (!x_used[door]) moves.push_back({MoveKind::RelocateOrigin, m, door});
    for (int n = 0; n < N; ++n)
        for (int door = 0; door < inst.outbound_doors; ++door)
            if (!y_used[door]) moves.push_back({MoveKind::RelocateDestination, n, door});
    return moves;
}

Assignment random_assignment(const Instance& inst, std::uint64_t seed) {
    inst.validate();
    Rng rng(derive_seed(seed, 0xA551ULL));
    Assignment a;
    a.x = rng.sample_prefix(inst.inbound_doors, inst.origins);
    a.y = rng.sample_prefix(inst.outbound_doors, inst.destinations);
    return a;
}

void write_assignment(std::ostream& out, const Assignment& a) {
    out << "X:";
    for (const int door : a.x) out << ' ' << door + 1;
    out << "\nY:";
    for (const int door : a.y) out << ' ' << door + 1;
    out << '\n';
}

Assignment read_assignment(std::istream& in) {
    Assignment a;
    bool seen_x = false, seen_y = false;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream tokens(raw);
        std::string head;
        if (!(tokens >> head)) continue;
        std::vector<int>* side = nullptr;
        if (head == "X:") {
            if (seen_x) throw ParseError(number, "duplicate X: line");
            side = &a.x;
            seen_x = true;
        } else if (head == "Y:") {
            if (seen_y) throw ParseError(number, "duplicate Y: line");
            side = &a.y;
            seen_y = true;
        } else {
            throw ParseError(number, "expected 'X:' or 'Y:', got '" + head + "'");
        }
        long long v = 0;
        while (tokens >> v) {
            if (v < 1) throw ParseError(number, "door indices are 1-based and positive");
            side->push_back(static_cast<int>(v - 1));
        }
        if (!tokens.eof()) throw ParseError(number, "door indices must be integers");
    }
    if (!seen_x || !seen_y) throw ParseError(number, "assignment needs both X: and Y: lines");
    return a;
}

Assignment read_assignment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open assignment file '" + path + "'");
    return read_assignment(in);
}

void write_assignment_file(const std::string& path, const Assignment& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write assignment file '" + path + "'");
    write_assignment(out, a);
}

}  // namespace cdap
