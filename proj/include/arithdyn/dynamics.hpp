#pragma once

// Exact orbits and the numeric sequences read off them.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arithdyn/geometry.hpp"
#include "arithdyn/heights.hpp"

namespace arithdyn {

inline constexpr std::size_t kDefaultBitBudget = std::size_t{1} << 24;

struct OrbitRecord {
    std::size_t n = 0;
    ProjPoint point;
    double h = 0.0;
    std::map<Place, double> lambda;
    std::map<std::string, double> extras;
};

using Observer = std::function<void(OrbitRecord&)>;

enum class OrbitStop { Completed, Indeterminate, BudgetExceeded };

struct Orbit {
    std::vector<OrbitRecord> records; // n = 0 .. last computed
    OrbitStop stop = OrbitStop::Completed;
    // For an early stop, the iterate that could not be produced.
    std::size_t stop_n = 0;
    std::string message;

    bool complete() const { return stop == OrbitStop::Completed; }
};

// f^0(x), ..., f^n_max(x). Stops early, keeping what was computed, when an
// iterate is indeterminate or a coordinate would exceed bit_budget bits.
Orbit iterate_orbit(const Morphism& f, const ProjPoint& x, std::size_t n_max,
                    std::span<const Observer> observers = {}, std::size_t bit_budget = kDefaultBitBudget);

// Fills record.lambda with lambda_{Y,v} for v in places (skipped on Y).
Observer local_height_observer(SubschemeData y, std::vector<Place> places);
// Fills record.lambda with delta_v(point, y) (skipped at y).
Observer distance_observer(ProjPoint y, std::vector<Place> places);

struct CycleInfo {
    std::size_t tail_length;
    std::size_t cycle_length;
};

// Exact repeat detection on canonical points; nullopt if none of
// f^0(x) .. f^budget(x) repeats.
std::optional<CycleInfo> detect_cycle(const Morphism& f, const ProjPoint& x, std::size_t budget);

// A per-n value, or nothing plus the reason it is undefined.
struct SeriesValue {
    std::size_t n;
    std::optional<double> value;
    std::string flag;
};
using Series = std::vector<SeriesValue>;

struct AlphaEstimates {
    Series root;  // max(1, h_n)^(1/n), n >= 1
    Series ratio; // max(1, h_{n+1}) / max(1, h_n), indexed by n
};

AlphaEstimates alpha_estimates(std::span<const OrbitRecord> records);

struct RatioRow {
    std::size_t n;
    double h;
    std::map<Place, double> lambda;
    std::optional<double> ratio;
    std::string flag;
};

// sum_{v in S} lambda_{Y,v}(f^n x) / h(f^n x); points on Y or with h = 0
// are flagged and the sequence continues.
std::vector<RatioRow> ratio_sequence(std::span<const OrbitRecord> records, const SubschemeData& y,
                                     std::span<const Place> places);

// Same with delta_v(f^n x, y) in place of lambda.
std::vector<RatioRow> distance_ratio_sequence(std::span<const OrbitRecord> records, const ProjPoint& y,
                                              std::span<const Place> places);

// log |a_i(n)| / log max_j |a_j(n)|.
Series lang_siegel_sequence(std::span<const OrbitRecord> records, std::size_t coordinate);

struct GcdRow {
    std::size_t n;
    std::optional<BigInt> gcd;
    std::optional<double> log_gcd;
    std::string flag;
};

// Finite part of h_Y along the orbit: log gcd_i |G_i(f^n x)|.
std::vector<GcdRow> gcd_height_sequence(std::span<const OrbitRecord> records, const SubschemeData& y);

std::string to_string(OrbitStop s);

} // namespace arithdyn
