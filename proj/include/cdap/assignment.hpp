#ifndef CDAP_ASSIGNMENT_HPP
#define CDAP_ASSIGNMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cdap/instance.hpp"

namespace cdap {

// Decision variables: x[m] is the inbound door of origin m, y[n] the
// outbound door of destination n. Feasible when both maps are injective
// and in range (each origin/destination on exactly one door, no sharing).
struct Assignment {
    std::vector<int> x;
    std::vector<int> y;

    bool operator==(const Assignment& other) const { return x == other.x && y == other.y; }
    bool operator!=(const Assignment& other) const { return !(*this == other); }

    // Lexicographic on (x, y); canonical tie-break order for reporting.
    bool operator<(const Assignment& other) const {
        if (x != other.x) return x < other.x;
        return y < other.y;
    }
};

// Throws FeasibilityError naming the offending origin/destination (1-based,
// matching all file and CLI surfaces).
void validate_assignment(const Instance& inst, const Assignment& a);

bool is_feasible(const Instance& inst, const Assignment& a);

enum class MoveKind { SwapOrigins, SwapDestinations, RelocateOrigin, RelocateDestination };

// Neighborhood move. For swaps, (a, b) are two origin or destination
// indices; for relocations, a is the origin/destination and b the target
// door, which must currently be unassigned.
struct Move {
    MoveKind kind = MoveKind::SwapOrigins;
    int a = 0;
    int b = 0;

    bool operator==(const Move& other) const {
        return kind == other.kind && a == other.a && b == other.b;
    }
};

std::string move_to_string(const Move& mv);

// Throws std::invalid_argument when the move is not valid for (inst, a).
void validate_move(const Instance& inst, const Assignment& a, const Move& mv);

// Returns the moved assignment; swaps are involutions.
Assignment apply(const Assignment& a, const Move& mv);

// The full neighborhood in canonical order: origin swaps (a < b),
// destination swaps, origin relocations to empty inbound doors,
// destination relocations to empty outbound doors. Identity swaps are
// excluded.
std::vector<Move> enumerate_moves(const Instance& inst, const Assignment& a);

// Uniform over injective assignments (independent ordered door selections
// per side); deterministic per seed.
Assignment random_assignment(const Instance& inst, std::uint64_t seed);

// Text format: "X:" and "Y:" lines with 1-based door indices.
void write_assignment(std::ostream& out, const Assignment& a);
Assignment read_assignment(std::istream& in);
Assignment read_assignment_file(const std::string& path);
void write_assignment_file(const std::string& path, const Assignment& a);

}  // namespace cdap

#endif
