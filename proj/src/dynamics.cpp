#include "arithdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "arithdyn/errors.hpp"

namespace arithdyn {

Orbit iterate_orbit(const Morphism& f, const ProjPoint& x, std::size_t n_max, std::span<const Observer> observers,
                    std::size_t bit_budget) {
    if (x.size() != f.nvars()) throw DomainError("point dimension does not match morphism");
    Orbit orbit;
    orbit.records.reserve(n_max + 1);
    auto record = [&](std::size_t n, ProjPoint p) {
        OrbitRecord r{n, std::move(p), 0.0, {}, {}};
        r.h = naive_height(r.point);
        for (const auto& obs : observers) obs(r);
        orbit.records.push_back(std::move(r));
    };
    record(0, x);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const ProjPoint& prev = orbit.records.back().point;
        try {
            ProjPoint next = f.apply(prev);
            if (next.max_bit_length() > bit_budget) {
                orbit.stop = OrbitStop::BudgetExceeded;
                orbit.stop_n = n;
                orbit.message = "coordinate size budget of " + std::to_string(bit_budget) + " bits exceeded at n = " +
                                std::to_string(n) + "; last safe n = " + std::to_string(n - 1);
                return orbit;
            }
            record(n, std::move(next));
        } catch (const IndeterminatePoint& e) {
            orbit.stop = OrbitStop::Indeterminate;
            orbit.stop_n = n;
            orbit.message = std::string(e.what()) + " at n = " + std::to_string(n);
            return orbit;
        }
    }
    return orbit;
}

Observer local_height_observer(SubschemeData y, std::vector<Place> places) {
    return [y = std::move(y), places = std::move(places)](OrbitRecord& r) {
        if (y.contains(r.point)) return;
        for (const auto& v : places) r.lambda[v] = local_height_subscheme(r.point, y, v);
    };
}

Observer distance_observer(ProjPoint y, std::vector<Place> places) {
    return [y = std::move(y), places = std::move(places)](OrbitRecord& r) {
        if (r.point == y) return;
        for (const auto& v : places) r.lambda[v] = arithmetic_distance(r.point, y, v);
    };
}

std::optional<CycleInfo> detect_cycle(const Morphism& f, const ProjPoint& x, std::size_t budget) {
    if (budget < 1) throw DomainError("cycle budget must be at least 1");
    std::map<ProjPoint, std::size_t> seen;
    ProjPoint cur = x;
    for (std::size_t n = 0; n <= budget; ++n) {
        auto [it, inserted] = seen.emplace(cur, n);
        if (!inserted) return CycleInfo{it->second, n - it->second};
        if (n < budget) cur = f.apply(cur);
    }
    return std::nullopt;
}

AlphaEstimates alpha_estimates(std::span<const OrbitRecord> records) {
    AlphaEstimates a;
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        const double h = std::max(1.0, r.h);
        if (r.n >= 1) a.root.push_back({r.n, std::pow(h, 1.0 / static_cast<double>(r.n)), ""});
        if (k + 1 < records.size() && records[k + 1].n == r.n + 1)
            a.ratio.push_back({r.n, std::max(1.0, records[k + 1].h) / h, ""});
    }
    return a;
}

namespace {

template <class Local>
std::vector<RatioRow> ratio_rows(std::span<const OrbitRecord> records, std::span<const Place> places, Local local,
                                 const char* on_target) {
    if (places.empty()) throw DomainError("place set S is empty");
    std::vector<RatioRow> rows;
    for (const auto& r : records) {
        RatioRow row{r.n, r.h, {}, std::nullopt, ""};
        try {
            double sum = 0.0;
            for (const auto& v : places) {
                const double l = local(r.point, v);
                row.lambda[v] = l;
                sum += l;
            }
            if (r.h > 0.0) {
                row.ratio = sum / r.h;
            } else {
                row.flag = "zero height";
            }
        } catch (const OnSupport&) {
            row.lambda.clear();
            row.flag = on_target;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::vector<RatioRow> ratio_sequence(std::span<const OrbitRecord> records, const SubschemeData& y,
                                     std::span<const Place> places) {
    return ratio_rows(
        records, places, [&](const ProjPoint& p, const Place& v) { return local_height_subscheme(p, y, v); },
        "on Y");
}

std::vector<RatioRow> distance_ratio_sequence(std::span<const OrbitRecord> records, const ProjPoint& y,
                                              std::span<const Place> places) {
    return ratio_rows(
        records, places, [&](const ProjPoint& p, const Place& v) { return arithmetic_distance(p, y, v); },
        "at target");
}

Series lang_siegel_sequence(std::span<const OrbitRecord> records, std::size_t coordinate) {
    Series out;
    for (const auto& r : records) {
        if (coordinate >= r.point.size()) throw DomainError("coordinate index out of range");
        const BigInt& a = r.point[coordinate];
        if (a == 0) {
            out.push_back({r.n, std::nullopt, "zero coordinate"});
        } else if (r.h == 0.0) {
            out.push_back({r.n, std::nullopt, "zero height"});
        } else {
            out.push_back({r.n, log_abs(a) / r.h, ""});
        }
    }
    return out;
}

std::vector<GcdRow> gcd_height_sequence(std::span<const OrbitRecord> records, const SubschemeData& y) {
    std::vector<GcdRow> out;
    for (const auto& r : records) {
        if (y.contains(r.point)) {
            out.push_back({r.n, std::nullopt, std::nullopt, "on Y"});
            continue;
        }
        std::vector<BigInt> values;
        for (const auto& g : y.generators()) values.push_back(g.value_at(r.point));
        BigInt g = gcd_many(values);
        const double l = log_abs(g);
        out.push_back({r.n, std::move(g), l, ""});
    }
    return out;
}

std::string to_string(OrbitStop s) {
    switch (s) {
    case OrbitStop::Completed: return "completed";
    case OrbitStop::Indeterminate: return "indeterminate";
    case OrbitStop::BudgetExceeded: return "budget-exceeded";
    }
    return "unknown";
}

} // namespace arithdyn
