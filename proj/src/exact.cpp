#include "cdap/exact.hpp"

#include <limits>
#include <stdexcept>

#include "cdap/errors.hpp"
#include "cdap/parallel.hpp"

namespace cdap {

unsigned long long falling_factorial(int n, int k) {
    unsigned long long p = 1;
    for (int i = 0; i < k; ++i) {
        const unsigned long long factor = static_cast<unsigned long long>(n - i);
        if (factor != 0 && p > std::numeric_limits<unsigned long long>::max() / factor)
            throw std::overflow_error("falling factorial exceeds 64 bits");
        p *= factor;
    }
    return p;
}

namespace {

// Lexicographically first ordered selection: (0, 1, ..., k-1).
void first_selection(std::vector<int>& sel, std::vector<char>& used, int k) {
    sel.resize(k);
    for (int i = 0; i < k; ++i) {
        sel[i] = i;
        used[i] = 1;
    }
}

// Advances sel to the next ordered selection of distinct values in [0, n),
// in lexicographic order. Returns false after the last one.
bool next_selection(std::vector<int>& sel, std::vector<char>& used, int n) {
    for (int pos = static_cast<int>(sel.size()) - 1; pos >= 0; --pos) {
        used[sel[pos]] = 0;
        int next = sel[pos] + 1;
        while (next < n && used[next]) ++next;
        if (next == n) continue;  // backtrack further
        sel[pos] = next;
        used[next] = 1;
        for (std::size_t p = pos + 1; p < sel.size(); ++p) {
            int v = 0;
            while (used[v]) ++v;
            sel[p] = v;
            used[v] = 1;
        }
        return true;
    }
    return false;
}

// The rank-th ordered selection (lexicographic), rank in [0, P(n,k)).
void unrank_selection(unsigned long long rank, int n, int k, std::vector<int>& sel,
                      std::vector<char>& used) {
    std::vector<int> avail(n);
    for (int i = 0; i < n; ++i) avail[i] = i;
    sel.resize(k);
    for (int p = 0; p < k; ++p) {
        const unsigned long long block = falling_factorial(n - 1 - p, k - 1 - p);
        const std::size_t idx = static_cast<std::size_t>(rank / block);
        rank %= block;
        sel[p] = avail[idx];
        used[sel[p]] = 1;
        avail.erase(avail.begin() + idx);
    }
}

struct PartialBest {
    Assignment best;
    Cost best_cost = std::numeric_limits<double>::infinity();
    unsigned long long optima_count = 0;

    void consider(const Assignment& a, Cost cost) {
        if (cost < best_cost) {
            best = a;
            best_cost = cost;
            optima_count = 1;
        } else if (cost == best_cost) {
            ++optima_count;  // first hit in lex order stays canonical
        }
    }
};

}  // namespace

void for_each_assignment(const Instance& inst, const std::function<void(const Assignment&)>& fn) {
    inst.validate();
    Assignment a;
    std::vector<char> x_used(inst.inbound_doors, 0);
    first_selection(a.x, x_used, inst.origins);
    do {
        std::vector<char> y_used(inst.outbound_doors, 0);
        first_selection(a.y, y_used, inst.destinations);
        do {
            fn(a);
        } while (next_selection(a.y, y_used, inst.outbound_doors));
    } while (next_selection(a.x, x_used, inst.inbound_doors));
}

ExactResult solve_exact(const Instance& inst, unsigned long long budget_limit, int threads) {
    inst.validate();
    const unsigned long long x_count = falling_factorial(inst.inbound_doors, inst.origins);
    const unsigned long long y_count = falling_factorial(inst.outbound_doors, inst.destinations);
    if (y_count != 0 && x_count > std::numeric_limits<unsigned long long>::max() / y_count)
        throw std::overflow_error("enumeration count exceeds 64 bits");
    const unsigned long long total = x_count * y_count;
    if (total > budget_limit) throw BudgetExceededError(total, budget_limit);

    if (threads < 1) threads = 1;
    const unsigned long long workers =
        std::min<unsigned long long>(static_cast<unsigned long long>(threads), x_count);
    const unsigned long long chunk = (x_count + workers - 1) / workers;

    std::vector<PartialBest> partials(workers);
    parallel_for(workers, static_cast<int>(workers), [&](std::size_t w) {
        const unsigned long long lo = w * chunk;
        const unsigned long long hi = std::min(x_count, lo + chunk);
        if (lo >= hi) return;

        PartialBest& acc = partials[w];
        Assignment a;
        std::vector<char> x_used(inst.inbound_doors, 0);
        unrank_selection(lo, inst.inbound_doors, inst.origins, a.x, x_used);
        for (unsigned long long rank = lo; rank < hi; ++rank) {
            std::vector<char> y_used(inst.outbound_doors, 0);
            first_selection(a.y, y_used, inst.destinations);
            do {
                acc.consider(a, evaluate_unchecked(inst, a));
            } while (next_selection(a.y, y_used, inst.outbound_doors));
            if (rank + 1 < hi) next_selection(a.x, x_used, inst.inbound_doors);
        }
    });

    // Reduce in x-rank order so the canonical (lex smallest) optimum wins.
    ExactResult result;
    result.num_evaluated = total;
    result.best_cost = std::numeric_limits<double>::infinity();
    for (const PartialBest& p : partials) {
        if (p.optima_count == 0) continue;
        if (p.best_cost < result.best_cost) {
            result.best = p.best;
            result.best_cost = p.best_cost;
            result.optima_count = p.optima_count;
        } else if (p.best_cost == result.best_cost) {
            result.optima_count += p.optima_count;
        }
    }
    return result;
}

}  // namespace cdap
