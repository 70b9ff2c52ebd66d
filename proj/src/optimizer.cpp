// Copyright 2026 The ghzsimplex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghzsimplex/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "ghzsimplex/error.hpp"

namespace ghz {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

class Search {
public:
    Search(const Objective& f, std::span<const BoxDimension> box, int budget, double tol)
        : f_(f), box_(box), budget_(budget), tol_(tol) {}

    SearchResult run(std::vector<double> x, std::mt19937_64& rng) {
        const std::size_t dim = box_.size();
        for (std::size_t j = 0; j < dim; ++j) x[j] = place(j, x[j]);
        double fx = eval(x);
        best_x_ = x;
        best_ = fx;
        if (dim == 0) return finish();
        std::vector<double> h(dim);
        for (std::size_t j = 0; j < dim; ++j) h[j] = (box_[j].hi - box_[j].lo) / 4.0;
        std::vector<double> dir(dim);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int coordinate_budget = budget_ - budget_ / 2;
        while (evals_ < coordinate_budget) {
            const std::vector<double> start = x;
            for (std::size_t j = 0; j < dim && evals_ < budget_; ++j) {
                std::fill(dir.begin(), dir.end(), 0.0);
                dir[j] = 1.0;
                const double t = line_search(x, fx, dir, -h[j], h[j]);
                const double range = box_[j].hi - box_[j].lo;
                h[j] = t != 0.0 ? std::clamp(2.0 * std::abs(t), 0.5 * h[j], range / 2.0) : 0.5 * h[j];
            }
            double moved = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                dir[j] = x[j] - start[j];
                moved += dir[j] * dir[j];
            }
            if (moved > 0.0 && evals_ < budget_) line_search(x, fx, dir, 0.0, 2.0);
            double mean_h = 0.0;
            for (std::size_t j = 0; j < dim; ++j) mean_h += h[j];
            mean_h /= static_cast<double>(dim);
            for (std::size_t rep = 0; rep < random_lines_ && evals_ < budget_; ++rep) {
                double norm = 0.0;
                for (auto& v : dir) {
                    v = gauss(rng);
                    norm += v * v;
                }
                norm = std::sqrt(norm);
                for (auto& v : dir) v *= 2.0 * mean_h / norm;
                line_search(x, fx, dir, -1.0, 1.0);
            }
            if (*std::max_element(h.begin(), h.end()) < tol_) break;
        }
        polish();
        return finish();
    }

private:
    double place(std::size_t j, double v) const {
        const auto& b = box_[j];
        if (b.periodic) {
            const double w = b.hi - b.lo;
            v = std::fmod(v - b.lo, w);
            if (v < 0.0) v += w;
            return b.lo + v;
        }
        return std::clamp(v, b.lo, b.hi);
    }

    /// Nelder-Mead from the best point with the remaining budget.
    void polish() {
        const std::size_t dim = box_.size();
        if (evals_ + static_cast<int>(dim) + 2 > budget_) return;
        struct Context {
            Search* self;
            std::vector<double> y;
        } ctx{this, std::vector<double>(dim)};
        gsl_multimin_function fn;
        fn.n = dim;
        fn.params = &ctx;
        fn.f = [](const gsl_vector* v, void* params) {
            auto* c = static_cast<Context*>(params);
            for (std::size_t j = 0; j < c->y.size(); ++j) c->y[j] = c->self->place(j, gsl_vector_get(v, j));
            const double value = c->self->eval(c->y);
            return std::isfinite(value) ? -value : std::numeric_limits<double>::max();
        };
        gsl_vector* x = gsl_vector_alloc(dim);
        gsl_vector* step = gsl_vector_alloc(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            gsl_vector_set(x, j, best_x_[j]);
            gsl_vector_set(step, j, 0.05 * (box_[j].hi - box_[j].lo));
        }
        gsl_multimin_fminimizer* nm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
        gsl_error_handler_t* previous = gsl_set_error_handler_off();
        if (gsl_multimin_fminimizer_set(nm, &fn, x, step) == GSL_SUCCESS) {
            while (evals_ + static_cast<int>(dim) + 1 < budget_) {
                if (gsl_multimin_fminimizer_iterate(nm) != GSL_SUCCESS) break;
                if (gsl_multimin_fminimizer_size(nm) < tol_) break;
            }
        }
        gsl_set_error_handler(previous);
        gsl_multimin_fminimizer_free(nm);
        gsl_vector_free(step);
        gsl_vector_free(x);
    }

    double eval(const std::vector<double>& x) {
        ++evals_;
        const double v = f_(x);
        if (v > best_ || best_x_.empty()) {
            best_ = v;
            best_x_ = x;
        }
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
    }

    std::vector<double> point(const std::vector<double>& x, const std::vector<double>& dir, double t) const {
        std::vector<double> y(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) y[j] = place(j, x[j] + t * dir[j]);
        return y;
    }

    /// Golden-section search for max_t f(x + t dir) on [a, b]. Moves x to the
    /// best point found (which may be t = 0) and returns the step taken.
    double line_search(std::vector<double>& x, double& fx, const std::vector<double>& dir, double a, double b) {
        double best_t = 0.0;
        double best_f = fx;
        auto g = [&](double t) {
            const double v = eval(point(x, dir, t));
            if (v > best_f) {
                best_f = v;
                best_t = t;
            }
            return v;
        };
        double c = b - kInvPhi * (b - a);
        double d = a + kInvPhi * (b - a);
        if (evals_ >= budget_) return 0.0;
        double fc = g(c);
        if (evals_ >= budget_) return commit(x, fx, dir, best_t, best_f);
        double fd = g(d);
        const double stop = std::max(tol_, 1e-3 * (b - a));
        while ((b - a) > stop && evals_ < budget_) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - kInvPhi * (b - a);
                fc = g(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + kInvPhi * (b - a);
                fd = g(d);
            }
        }
        return commit(x, fx, dir, best_t, best_f);
    }

    double commit(std::vector<double>& x, double& fx, const std::vector<double>& dir, double t, double ft) const {
        if (t != 0.0) {
            x = point(x, dir, t);
            fx = ft;
        }
        return t;
    }

    SearchResult finish() const {
        SearchResult r;
        r.x = best_x_;
        r.value = best_;
        r.evaluations = evals_;
        return r;
    }

    const Objective& f_;
    std::span<const BoxDimension> box_;
    int budget_;
    double tol_;
    int evals_ = 0;
    std::size_t random_lines_ = (box_.size() + 1) / 2;
    std::vector<double> best_x_;
    double best_ = -std::numeric_limits<double>::infinity();
};

} // namespace

SearchResult maximize_box(const Objective& f, std::span<const BoxDimension> box, std::span<const double> start,
                          const SearchOptions& options) {
    if (start.size() != box.size()) throw Error(ErrorCode::DimensionMismatch, "maximize_box: start/box size mismatch");
    if (options.restarts < 1) throw Error(ErrorCode::InvalidArgument, "optimizer needs at least one restart");
    if (options.max_evaluations < 1) throw Error(ErrorCode::InvalidArgument, "optimizer needs a positive budget");
    for (const auto& b : box) {
        if (!(b.hi > b.lo)) throw Error(ErrorCode::InvalidArgument, "maximize_box: empty coordinate range");
    }
    const auto restarts = static_cast<std::size_t>(options.restarts);
    std::vector<SearchResult> results(restarts);
    auto run_one = [&](std::size_t r) {
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32)};
        std::mt19937_64 rng(seq);
        std::vector<double> x(start.begin(), start.end());
        if (r > 0) {
            for (std::size_t j = 0; j < box.size(); ++j) {
                x[j] = std::uniform_real_distribution<double>(box[j].lo, box[j].hi)(rng);
            }
        }
        Search search(f, box, options.max_evaluations, options.tolerance);
        results[r] = search.run(std::move(x), rng);
        results[r].restart = static_cast<int>(r);
    };
    const auto threads = static_cast<std::size_t>(std::clamp(options.threads, 1, options.restarts));
    if (threads == 1) {
        for (std::size_t r = 0; r < restarts; ++r) run_one(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> failures(threads);
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t r = next++; r < restarts; r = next++) run_one(r);
                } catch (...) {
                    failures[t] = std::current_exception();
                    next = restarts;
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : failures) {
            if (e) std::rethrow_exception(e);
        }
    }
    SearchResult best = results.front();
    long long total = 0;
    for (const auto& r : results) {
        total += r.evaluations;
        if (r.value > best.value) best = r;
    }
    best.evaluations = total;
    return best;
}

} // namespace ghz
