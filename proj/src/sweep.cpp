#include "canard/sweep.hpp"

#include "canard/csv.hpp"
#include "canard/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

namespace canard {

double AxisRange::at(int i) const {
    if (count <= 1) {
        return min;
    }
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

void SweepSpec::validate() const {
    const std::pair<const char*, const AxisRange*> axes[] = {{"a", &a}, {"p", &p}, {"m", &m}};
    for (const auto& [name, r] : axes) {
        if (r->count < 1) {
            throw UsageError(std::string("sweep: ") + name + " range is empty");
        }
        if (!std::isfinite(r->min) || !std::isfinite(r->max) || r->min > r->max) {
            throw UsageError(std::string("sweep: ") + name + " range needs finite min <= max");
        }
    }
    if (!std::isfinite(delta) || !(r > 0.0) || !std::isfinite(k) || !std::isfinite(lambda)) {
        throw UsageError("sweep: delta, k, lambda must be finite and r > 0");
    }
}

DimensionlessParams RegionRow::params() const {
    return {.k = k, .p = p, .a = a, .b = b, .m = m, .lambda = lambda, .r = r, .epsilon = 0.01};
}

double b_for_delta(double a, double p, double m, double k, double delta_value) {
    return p * (a + 1.0) * (a + 1.0) - m * (k + 2.0) - delta_value;
}

namespace {

RegionRow evaluate(const SweepSpec& spec, double a, double p, double m) {
    RegionRow row;
    row.a = a;
    row.p = p;
    row.m = m;
    row.k = spec.k;
    row.lambda = spec.lambda;
    row.r = spec.r;
    row.b = b_for_delta(a, p, m, spec.k, spec.delta);
    row.delta = spec.delta;

    if (m == 0.0) {
        // The discriminant test is undefined; no condition can be certified.
        row.r_max = std::numeric_limits<double>::quiet_NaN();
        return row;
    }
    const ConditionReport rep = check_conditions(row.params(), spec.mode);
    const Condition* slots[] = {&rep.a, &rep.b, &rep.c, &rep.d, &rep.e,
                                &rep.f, &rep.g, &rep.h, &rep.i};
    for (std::size_t i = 0; i < row.cond.size(); ++i) {
        row.cond[i] = slots[i]->pass;
    }
    row.r_max = rep.r_max;
    row.verdict = spec.subset ? rep.verdict_subset : rep.verdict;
    return row;
}

}  // namespace

std::vector<RegionRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::size_t na = static_cast<std::size_t>(spec.a.count);
    const std::size_t np = static_cast<std::size_t>(spec.p.count);
    const std::size_t nm = static_cast<std::size_t>(spec.m.count);
    const std::size_t total = na * np * nm;
    std::vector<RegionRow> rows(total);

    unsigned workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(total, 64)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const std::size_t ia = idx / (np * nm);
            const std::size_t ip = (idx / nm) % np;
            const std::size_t im = idx % nm;
            try {
                rows[idx] = evaluate(spec, spec.a.at(static_cast<int>(ia)),
                                     spec.p.at(static_cast<int>(ip)),
                                     spec.m.at(static_cast<int>(im)));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

void write_region_csv(std::ostream& os, const std::vector<RegionRow>& rows, SweepEmit emit) {
    os << "a,p,m,delta";
    for (char c = 'a'; c <= 'i'; ++c) {
        os << ",cond_" << c;
    }
    os << ",r_max,verdict\n";
    for (const auto& row : rows) {
        if (emit == SweepEmit::region && !row.verdict) {
            continue;
        }
        os << csv::number(row.a) << ',' << csv::number(row.p) << ',' << csv::number(row.m) << ','
           << csv::number(row.delta);
        for (bool c : row.cond) {
            os << ',' << (c ? 1 : 0);
        }
        os << ',' << csv::number(row.r_max) << ',' << (row.verdict ? 1 : 0) << '\n';
    }
}

}  // namespace canard
