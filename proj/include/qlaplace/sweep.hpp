#pragma once

// Grid evaluation behind the CLI: one row per (p, q) pair per requested
// method, rows computed concurrently and emitted in deterministic p-major
// order. CSV schema is fixed:
//   re_p,im_p,q,re_L,im_L,abs_err,converged,method,rel_diff

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "qlaplace/closedform.hpp"
#include "qlaplace/config_json.hpp"
#include "qlaplace/series.hpp"
#include "qlaplace/transform.hpp"

namespace qlaplace::cli {

struct SweepRow {
    double re_p, im_p, q;
    double re_L, im_L;
    double abs_err;
    bool converged;
    std::string method;  // quadrature | closedform | series1
    std::optional<double> rel_diff;
};

inline int worker_count() {
    if (const char* env = std::getenv("QLAPLACE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace sweep_detail {

// Closed form matching the sweep variant at the effective index, when the
// catalog has one for this function.
inline std::optional<ClosedFormResult> closed_form_for(const SweepRequest& req,
                                                       ComplexPoint p, double q_eff) {
    const FunctionSpec& f = req.function;
    QIndex q(q_eff);
    switch (f.kind()) {
        case FunctionKind::heaviside_step:
            if (f.reflected() && (req.variant == Variant::unilateral ||
                                  req.variant == Variant::partition))
                return std::nullopt;  // H(-x) has no mass on the right half line
            return step_transform(p, q,
                                  f.reflected() ? StepVariant::left_step
                                                : StepVariant::right_step);
        case FunctionKind::constant: {
            double c = f.constant_value();
            if (c == 0.0) return std::nullopt;
            bool one_sided = req.variant == Variant::unilateral ||
                             req.variant == Variant::partition;
            if (one_sided) return scaled_step_transform(p, q, c, false);
            // two-sided: c^{2-q}/((2-q) p) on either half plane
            ClosedFormResult r = step_transform(p, q, StepVariant::one);
            r.value *= std::pow(c, 2.0 - q_eff);
            r.est_error *= std::pow(c, 2.0 - q_eff);
            return r;
        }
        case FunctionKind::scaled_step:
            return scaled_step_transform(p, q, f.constant_value(), false);
        case FunctionKind::power_window:
            return power_window_transform(p, q, f.lambda(), f.beta(), f.window_a(),
                                          f.window_b());
        case FunctionKind::q_gaussian: {
            if (req.variant == Variant::classical)
                return qgauss_firstorder_G(p, f.gaussian().qprime,
                                           f.gaussian().alpha);
            if (req.variant == Variant::fixed ||
                req.variant == Variant::equivalence_class)
                return qgauss_fixed_transform(
                    p, q, f.gaussian().alpha,
                    /*unilateral=*/false);
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

inline void fill_value(SweepRow& row, complex v, double abs_err, bool converged) {
    row.re_L = v.real();
    row.im_L = v.imag();
    row.abs_err = abs_err;
    row.converged = converged;
}

}  // namespace sweep_detail

// Evaluate the full grid. Rows for one (p, q) pair appear consecutively in
// method order quadrature, closedform, series1.
inline std::vector<SweepRow> run_sweep(const SweepRequest& req) {
    struct Cell {
        std::vector<SweepRow> rows;
    };
    const std::size_t np = req.p_grid.size();
    const std::size_t nq = req.q_grid.size();
    std::vector<Cell> cells(np * nq);

    auto eval_cell = [&](std::size_t idx) {
        std::size_t ip = idx / nq, iq = idx % nq;
        ComplexPoint p = req.p_grid[ip];
        double q_raw = req.q_grid[iq];
        double q_eff = q_raw;
        if (req.variant == Variant::fixed)
            q_eff = req.function.intrinsic_q().value_or(q_raw);
        if (req.variant == Variant::classical) q_eff = 1.0;

        Cell& cell = cells[idx];
        SweepRow base{p.real(), p.imag(), q_eff, 0.0, 0.0, 0.0, true, "", std::nullopt};

        SweepRow quad = base;
        quad.method = "quadrature";
        TransformValue tv =
            evaluate_transform(req.function, p, q_raw, req.variant, req.quadrature);
        sweep_detail::fill_value(quad, tv.value, tv.abs_err, tv.converged);
        cell.rows.push_back(quad);

        if (req.compare) {
            auto cf = sweep_detail::closed_form_for(req, p, q_eff);
            if (cf.has_value() && cf->supported) {
                SweepRow closed = base;
                closed.method = "closedform";
                sweep_detail::fill_value(closed, cf->value, cf->est_error, true);
                closed.rel_diff = std::abs(tv.value - cf->value) /
                                  std::max(std::abs(cf->value), 1e-300);
                cell.rows.push_back(closed);
            }
        }
        if (req.series1 && QIndex::admissible(q_eff) && q_eff - 1.0 <= 0.15) {
            try {
                complex s1 = first_order_transform(req.function, p, QIndex(q_eff),
                                                   req.quadrature);
                SweepRow row = base;
                row.method = "series1";
                sweep_detail::fill_value(row, s1, 0.0, true);
                row.rel_diff = std::abs(tv.value - s1) /
                               std::max(std::abs(s1), 1e-300);
                cell.rows.push_back(row);
            } catch (const NumericsError&) {
                // no series row when the stencil fails; quadrature row stands
            }
        }
    };

    const int nw = std::min<int>(worker_count(), static_cast<int>(cells.size()));
    if (nw <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) eval_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mu;
        pool.reserve(static_cast<std::size_t>(nw));
        for (int w = 0; w < nw; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= cells.size()) return;
                    try {
                        eval_cell(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mu);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<SweepRow> rows;
    for (const Cell& c : cells)
        rows.insert(rows.end(), c.rows.begin(), c.rows.end());
    return rows;
}

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "re_p,im_p,q,re_L,im_L,abs_err,converged,method,rel_diff\n";
    for (const SweepRow& r : rows) {
        out << format_number(r.re_p) << ',' << format_number(r.im_p) << ','
            << format_number(r.q) << ',' << format_number(r.re_L) << ','
            << format_number(r.im_L) << ',' << format_number(r.abs_err) << ','
            << (r.converged ? '1' : '0') << ',' << r.method << ',';
        if (r.rel_diff.has_value()) out << format_number(*r.rel_diff);
        out << '\n';
    }
}

inline json rows_to_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json o;
        o["re_p"] = r.re_p;
        o["im_p"] = r.im_p;
        o["q"] = r.q;
        o["re_L"] = r.re_L;
        o["im_L"] = r.im_L;
        o["abs_err"] = r.abs_err;
        o["converged"] = r.converged;
        o["method"] = r.method;
        if (r.rel_diff.has_value())
            o["rel_diff"] = *r.rel_diff;
        else
            o["rel_diff"] = nullptr;
        arr.push_back(std::move(o));
    }
    return arr;
}

}  // namespace qlaplace::cli
