#include "cdap/des.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <deque>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "cdap/errors.hpp"
#include "cdap/parallel.hpp"
#include "cdap/rng.hpp"
#include "cdap/text.hpp"

namespace cdap {

DurationSpec DurationSpec::none() { return {Kind::None, 0.0, 0.0}; }
DurationSpec DurationSpec::constant(double value) { return {Kind::Constant, value, value}; }
DurationSpec DurationSpec::uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
DurationSpec DurationSpec::exponential(double mean) { return {Kind::Exponential, mean, mean}; }

void DurationSpec::validate(const char* what) const {
    switch (kind) {
        case Kind::None: return;
        case Kind::Constant:
            if (!(a >= 0.0)) throw std::invalid_argument(std::string(what) + ": constant must be >= 0");
            return;
        case Kind::Uniform:
            if (!(a >= 0.0) || !(b >= a))
                throw std::invalid_argument(std::string(what) + ": uniform needs 0 <= a <= b");
            return;
        case Kind::Exponential:
            if (!(a > 0.0)) throw std::invalid_argument(std::string(what) + ": mean must be positive");
            return;
    }
}

namespace {

double draw_duration(const DurationSpec& spec, Rng& rng) {
    switch (spec.kind) {
        case DurationSpec::Kind::None: return 0.0;
        case DurationSpec::Kind::Constant: return spec.a;
        case DurationSpec::Kind::Uniform: return rng.uniform_real(spec.a, spec.b);
        case DurationSpec::Kind::Exponential: return rng.exponential(spec.a);
    }
    return 0.0;
}

}  // namespace

std::string DurationSpec::to_string() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Constant: return "constant " + format_real17(a);
        case Kind::Uniform: return "uniform " + format_real17(a) + " " + format_real17(b);
        case Kind::Exponential: return "exponential " + format_real17(a);
    }
    return "?";
}

DurationSpec parse_duration_spec(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    if (!(in >> kind)) throw std::invalid_argument("empty duration spec");
    auto read_real = [&](const char* what) {
        double v = 0.0;
        if (!(in >> v)) throw std::invalid_argument(std::string("duration spec needs ") + what);
        return v;
    };
    DurationSpec spec;
    if (kind == "none") {
        spec = DurationSpec::none();
    } else if (kind == "constant") {
        spec = DurationSpec::constant(read_real("a value"));
    } else if (kind == "uniform") {
        const double lo = read_real("a lower bound");
        spec = DurationSpec::uniform(lo, read_real("an upper bound"));
    } else if (kind == "exponential") {
        spec = DurationSpec::exponential(read_real("a mean"));
    } else {
        throw std::invalid_argument("unknown duration kind '" + kind +
                                    "' (expected none|constant|uniform|exponential)");
    }
    std::string extra;
    if (in >> extra) throw std::invalid_argument("trailing tokens in duration spec");
    return spec;
}

void SimConfig::validate() const {
    if (arrival_process == ArrivalProcess::Poisson) {
        if (!(arrival_rate > 0.0)) throw std::invalid_argument("arrival_rate must be positive");
        if (trailers_per_origin < 1)
            throw std::invalid_argument("trailers_per_origin must be at least 1");
    } else {
        if (schedule.empty()) throw std::invalid_argument("explicit schedule has no entries");
        for (const ArrivalEntry& e : schedule) {
            if (e.origin < 0) throw std::invalid_argument("schedule origin index out of range");
            if (!(e.time >= 0.0)) throw std::invalid_argument("schedule arrival times must be >= 0");
        }
    }
    if (!unload_time.enabled()) throw std::invalid_argument("unload_time cannot be 'none'");
    unload_time.validate("unload_time");
    outbound_service_time.validate("outbound_service_time");
    if (forklift_count < 1) throw std::invalid_argument("forklift_count must be at least 1");
    if (!(forklift_speed > 0.0)) throw std::invalid_argument("forklift_speed must be positive");
    if (delay_weight < 0.0) throw std::invalid_argument("delay_weight must be non-negative");
}

bool Scenario::operator==(const Scenario& other) const {
    if (trailers.size() != other.trailers.size()) return false;
    for (std::size_t t = 0; t < trailers.size(); ++t) {
        const Trailer& lhs = trailers[t];
        const Trailer& rhs = other.trailers[t];
        if (lhs.origin != rhs.origin || lhs.arrival_time != rhs.arrival_time ||
            lhs.unload_duration != rhs.unload_duration || lhs.trips != rhs.trips ||
            lhs.service_times != rhs.service_times)
            return false;
    }
    return true;
}

namespace {

// Draw purposes, folded into per-entity seeds.
constexpr std::uint64_t kDrawArrival = 0xA221;
constexpr std::uint64_t kDrawUnload = 0x0410;
constexpr std::uint64_t kDrawService = 0x5E2C;

std::vector<long long> trip_row(const Instance& inst, const SimConfig& cfg, int origin,
                                int trailer_index_of_origin, int trailers_of_origin) {
    std::vector<long long> trips(inst.destinations, 0);
    for (int n = 0; n < inst.destinations; ++n) {
        const long long w = inst.flow(origin, n);
        if (cfg.trips_per_trailer == TripRule::FullRow) {
            trips[n] = w;
        } else {
            // Split the row across the origin's trailers; earlier trailers
            // take the remainder so totals are preserved.
            const long long base = w / trailers_of_origin;
            const long long extra = (trailer_index_of_origin < w % trailers_of_origin) ? 1 : 0;
            trips[n] = base + extra;
        }
    }
    return trips;
}

}  // namespace

Scenario realize_scenario(const Instance& inst, const SimConfig& cfg, std::uint64_t rep_seed) {
    cfg.validate();

    // (origin, per-origin index, arrival time) tuples before global ordering.
    struct Raw {
        int origin;
        int index_of_origin;
        double arrival;
    };
    std::vector<Raw> raw;
    std::vector<int> per_origin_count(inst.origins, 0);

    if (cfg.arrival_process == ArrivalProcess::Poisson) {
        for (int m = 0; m < inst.origins; ++m) {
            double clock = 0.0;
            for (int k = 0; k < cfg.trailers_per_origin; ++k) {
                Rng rng(derive_seed(rep_seed, kDrawArrival, m, k));
                clock += rng.exponential(1.0 / cfg.arrival_rate);
                raw.push_back({m, k, clock});
            }
            per_origin_count[m] = cfg.trailers_per_origin;
        }
    } else {
        for (const ArrivalEntry& e : cfg.schedule) {
            if (e.origin >= inst.origins)
                throw std::invalid_argument("schedule origin " + std::to_string(e.origin + 1) +
                                            " exceeds M=" + std::to_string(inst.origins));
            raw.push_back({e.origin, per_origin_count[e.origin]++, e.time});
        }
    }

    // Global arrival order; ties keep (origin, per-origin index) order.
    std::stable_sort(raw.begin(), raw.end(), [](const Raw& lhs, const Raw& rhs) {
        return lhs.arrival < rhs.arrival;
    });

    Scenario scenario;
    scenario.trailers.reserve(raw.size());
    for (const Raw& r : raw) {
        Trailer trailer;
        trailer.origin = r.origin;
        trailer.arrival_time = r.arrival;
        Rng unload_rng(derive_seed(rep_seed, kDrawUnload, r.origin, r.index_of_origin));
        trailer.unload_duration = draw_duration(cfg.unload_time, unload_rng);
        trailer.trips = trip_row(inst, cfg, r.origin, r.index_of_origin, per_origin_count[r.origin]);
        if (cfg.outbound_service_time.enabled()) {
            long long trip_id = 0;
            for (int n = 0; n < inst.destinations; ++n)
                for (long long c = 0; c < trailer.trips[n]; ++c) {
                    Rng rng(derive_seed(rep_seed, kDrawService, r.origin, r.index_of_origin,
                                        static_cast<std::uint64_t>(trip_id++)));
                    trailer.service_times.push_back(draw_duration(cfg.outbound_service_time, rng));
                }
        }
        scenario.trailers.push_back(std::move(trailer));
    }
    return scenario;
}

namespace {

// Fixed processing order at equal times: resources are freed before new
// demands appear, and everything is deterministic.
enum EventKind : int { kDoorReleased = 0, kTrailerArrival = 1, kUnloadComplete = 2, kTripComplete = 3 };

struct Event {
    double time;
    int kind;
    long long seq;
    int entity;  // trailer id, door slot, or trip id depending on kind

    bool operator>(const Event& other) const {
        if (time != other.time) return time > other.time;
        if (kind != other.kind) return kind > other.kind;
        return seq > other.seq;
    }
};

struct PendingTrip {
    int trailer;
    int destination;
    double distance;
    double service_time;
};

}  // namespace

std::uint64_t replication_seed(std::uint64_t master_seed, int r) {
    return derive_seed(master_seed, 0x2E9ULL, static_cast<std::uint64_t>(r));
}

SimResult simulate(const Instance& inst, const Assignment& a, const SimConfig& cfg,
                   std::uint64_t rep_seed) {
    validate_assignment(inst, a);
    const Scenario scenario = realize_scenario(inst, cfg, rep_seed);
    const int num_trailers = static_cast<int>(scenario.trailers.size());

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> pending;
    long long seq = 0;
    auto schedule_event = [&](double time, int kind, int entity) {
        pending.push({time, kind, seq++, entity});
    };

    // Inbound doors are the M assigned doors; slot s is physical door x[s].
    std::vector<char> door_free(inst.origins, 1);
    std::vector<double> door_entry_time(inst.origins, 0.0);
    std::vector<double> door_busy(inst.inbound_doors, 0.0);

    std::vector<double> trailer_entry(num_trailers, -1.0);
    std::deque<int> arrival_queue;

    std::vector<PendingTrip> trips;
    std::deque<std::size_t> trip_queue;
    int free_forklifts = cfg.forklift_count;
    std::vector<double> outbound_door_free(inst.outbound_doors, 0.0);

    Matrix<long long> completed(num_trailers, inst.destinations, 0);
    double waiting_total = 0.0;
    double makespan = 0.0;
    long long dispatched_trips = 0;

    auto try_admit = [&](double now) {
        while (!arrival_queue.empty()) {
            int slot = -1;
            for (int s = 0; s < inst.origins; ++s)
                if (door_free[s]) {
                    slot = s;
                    break;
                }
            if (slot < 0) return;
            const int trailer = arrival_queue.front();
            arrival_queue.pop_front();
            door_free[slot] = 0;
            door_entry_time[slot] = now;
            trailer_entry[trailer] = now;
            waiting_total += now - scenario.trailers[trailer].arrival_time;
            const double done = now + scenario.trailers[trailer].unload_duration;
            schedule_event(done, kDoorReleased, slot);
            schedule_event(done, kUnloadComplete, trailer);
        }
    };

    auto try_dispatch = [&](double now) {
        while (free_forklifts > 0 && !trip_queue.empty()) {
            const std::size_t trip_id = trip_queue.front();
            trip_queue.pop_front();
            --free_forklifts;
            const PendingTrip& trip = trips[trip_id];
            const double leg = trip.distance / cfg.forklift_speed;
            double complete;
            if (cfg.outbound_service_time.enabled()) {
                // Outbound doors serve trips in dispatch order; the forklift
                // waits at the door and then returns empty.
                const int j = a.y[trip.destination];
                const double arrive = now + leg;
                const double start = std::max(arrive, outbound_door_free[j]);
                outbound_door_free[j] = start + trip.service_time;
                complete = start + trip.service_time + leg;
            } else {
                complete = now + 2.0 * leg;
            }
            schedule_event(complete, kTripComplete, static_cast<int>(trip_id));
        }
    };

    for (int t = 0; t < num_trailers; ++t)
        schedule_event(scenario.trailers[t].arrival_time, kTrailerArrival, t);

    double clock = 0.0;
    while (!pending.empty()) {
        const Event ev = pending.top();
        pending.pop();
        assert(ev.time >= clock);
        clock = ev.time;
        makespan = std::max(makespan, clock);
        switch (ev.kind) {
            case kDoorReleased: {
                const int slot = ev.entity;
                door_busy[a.x[slot]] += clock - door_entry_time[slot];
                door_free[slot] = 1;
                try_admit(clock);
                break;
            }
            case kTrailerArrival:
                arrival_queue.push_back(ev.entity);
                try_admit(clock);
                break;
            case kUnloadComplete: {
                const Trailer& trailer = scenario.trailers[ev.entity];
                long long trip_index = 0;
                for (int n = 0; n < inst.destinations; ++n) {
                    const double distance = inst.distance(a.x[trailer.origin], a.y[n]);
                    for (long long c = 0; c < trailer.trips[n]; ++c) {
                        PendingTrip trip;
                        trip.trailer = ev.entity;
                        trip.destination = n;
                        trip.distance = distance;
                        trip.service_time = cfg.outbound_service_time.enabled()
                                                ? trailer.service_times[trip_index]
                                                : 0.0;
                        ++trip_index;
                        trip_queue.push_back(trips.size());
                        trips.push_back(trip);
                        ++dispatched_trips;
                    }
                }
                try_dispatch(clock);
                break;
            }
            case kTripComplete: {
                const PendingTrip& trip = trips[ev.entity];
                completed(trip.trailer, trip.destination) += 1;
                ++free_forklifts;
                try_dispatch(clock);
                break;
            }
        }
    }

    // Conservation: everything admitted, unloaded, and hauled.
    assert(arrival_queue.empty() && trip_queue.empty());

    SimResult result;
    result.total_trips = dispatched_trips;
    result.total_trailer_waiting_time = waiting_total;
    result.makespan = makespan;
    result.door_busy_time = door_busy;

    // Travel is totalled from completion counts in (trailer, destination)
    // order so the sum is independent of event interleaving and matches the
    // static objective's summation exactly in the uncongested case.
    double loaded = 0.0;
    for (int t = 0; t < num_trailers; ++t) {
        const int i = a.x[scenario.trailers[t].origin];
        for (int n = 0; n < inst.destinations; ++n) {
            const long long count = completed(t, n);
            assert(count == scenario.trailers[t].trips[n]);
            if (count > 0) loaded += inst.distance(i, a.y[n]) * static_cast<double>(count);
        }
    }
    result.loaded_travel_distance = loaded;
    result.total_travel_distance = 2.0 * loaded;  // empty return legs double the distance
    result.refined_cost = result.total_travel_distance + cfg.delay_weight * waiting_total;
    return result;
}

std::vector<SimResult> run_replications(const Instance& inst, const Assignment& a,
                                        const SimConfig& cfg, int replications,
                                        std::uint64_t master_seed, int threads) {
    if (replications < 1) throw std::invalid_argument("replications must be at least 1");
    std::vector<SimResult> results(replications);
    parallel_for(static_cast<std::size_t>(replications), threads, [&](std::size_t r) {
        results[r] = simulate(inst, a, cfg, replication_seed(master_seed, static_cast<int>(r)));
    });
    return results;
}

CostEstimate summarize_costs(const std::vector<SimResult>& results) {
    CostEstimate est;
    est.values.reserve(results.size());
    for (const SimResult& r : results) est.values.push_back(r.refined_cost);

    // Identical values (deterministic scenarios, R=1) report their exact
    // mean and zero deviation instead of accumulated rounding noise.
    const bool all_equal =
        std::all_of(est.values.begin(), est.values.end(),
                    [&](double v) { return v == est.values.front(); });
    if (all_equal) {
        est.mean = est.values.front();
        est.stddev = 0.0;
        return est;
    }

    double sum = 0.0;
    for (const double v : est.values) sum += v;
    est.mean = sum / static_cast<double>(est.values.size());
    double ss = 0.0;
    for (const double v : est.values) ss += (v - est.mean) * (v - est.mean);
    est.stddev = std::sqrt(ss / static_cast<double>(est.values.size() - 1));
    return est;
}

CostEstimate estimate_cost(const Instance& inst, const Assignment& a, const SimConfig& cfg,
                           int replications, std::uint64_t master_seed, int threads) {
    return summarize_costs(run_replications(inst, a, cfg, replications, master_seed, threads));
}

}  // namespace cdap
