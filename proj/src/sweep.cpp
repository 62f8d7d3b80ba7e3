#include "qdistil/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "qdistil/bell_edp.hpp"
#include "qdistil/multipartite_edp.hpp"
#include "qdistil/version.hpp"

namespace qdistil::sweep {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, Protocol>& protocol_names() {
    static const std::map<std::string, Protocol> names = {
        {"bell-twocopy", Protocol::bell_twocopy},
        {"bell-bisection", Protocol::bell_bisection},
        {"bell-nonmax", Protocol::bell_nonmax},
        {"ghz", Protocol::ghz},
        {"w-state", Protocol::w_state},
        {"w-ratio", Protocol::w_ratio},
        {"w-asymptotic", Protocol::w_asymptotic},
        {"optimal-w", Protocol::optimal_w},
    };
    return names;
}

double get(const std::map<std::string, double>& pt, const std::string& key,
           double fallback) {
    const auto it = pt.find(key);
    return it == pt.end() ? fallback : it->second;
}

int geti(const std::map<std::string, double>& pt, const std::string& key,
         int fallback) {
    const auto it = pt.find(key);
    return it == pt.end() ? fallback
                          : static_cast<int>(std::llround(it->second));
}

struct RowValues {
    std::vector<double> values;
    std::string status = "ok";
};

std::vector<std::string> value_columns(Protocol p) {
    switch (p) {
        case Protocol::bell_twocopy:
            return {"filter_probability", "concurrence", "efficiency"};
        case Protocol::bell_nonmax:
            return {"efficiency"};
        case Protocol::bell_bisection:
            return {"efficiency"};
        case Protocol::ghz:
            return {"filter_probability", "efficiency"};
        case Protocol::w_state:
            return {"steps", "filter_probability", "efficiency"};
        case Protocol::w_ratio:
            return {"steps", "reference_steps", "ratio"};
        case Protocol::w_asymptotic:
            return {"ratio"};
        case Protocol::optimal_w:
            return {"w_opt", "efficiency_opt", "efficiency_w0", "steps"};
    }
    throw ConfigError("unhandled protocol");
}

RowValues evaluate(const SweepConfig& cfg,
                   const std::map<std::string, double>& pt) {
    RowValues rv;
    switch (cfg.protocol) {
        case Protocol::bell_twocopy: {
            const bell_edp::BellScenario sc{
                channels::ADParams(get(pt, "d1", get(pt, "d", 0.0))),
                channels::ADParams(get(pt, "d2", get(pt, "d", 0.0))),
                channels::NRWMParams(get(pt, "w1", get(pt, "w", 0.0))),
                channels::NRWMParams(get(pt, "w2", get(pt, "w", 0.0)))};
            const auto fs = bell_edp::bell_filtered_state(sc);
            const auto rep =
                bell_edp::two_copy_efficiency(sc, geti(pt, "m", cfg.rounds));
            rv.values = {fs.success_probability, fs.concurrence,
                         rep.cumulative};
            break;
        }
        case Protocol::bell_nonmax: {
            const auto rep = bell_edp::nonmax_initial_pipeline(
                channels::ADParams(get(pt, "d", 0.0)),
                channels::NRWMParams(get(pt, "w", 0.0)),
                geti(pt, "m", cfg.rounds));
            rv.values = {rep.cumulative};
            break;
        }
        case Protocol::bell_bisection: {
            const auto rep = bell_edp::bisection_efficiency(
                channels::ADParams(get(pt, "d", 0.0)),
                channels::NRWMParams(get(pt, "w", 0.0)),
                geti(pt, "n", cfg.copies));
            rv.values = {rep.cumulative};
            break;
        }
        case Protocol::ghz: {
            const channels::ADParams d(get(pt, "d", 0.0));
            const channels::NRWMParams w(get(pt, "w", 0.0));
            const auto fs = multipartite_edp::ghz_noisy_and_filtered(d, w);
            const auto rep = multipartite_edp::ghz_efficiency(
                multipartite_edp::GHZScenario{d, w, geti(pt, "m", cfg.rounds)});
            rv.values = {fs.success_probability, rep.cumulative};
            break;
        }
        case Protocol::w_state: {
            const multipartite_edp::WScenario sc{
                geti(pt, "N", cfg.parties),
                channels::ADParams(get(pt, "d", 0.0)),
                channels::NRWMParams(get(pt, "w", 0.0)), cfg.epsilon};
            try {
                const auto tr = multipartite_edp::w_trajectory(sc);
                rv.values = {static_cast<double>(tr.steps),
                             tr.filter_probability, tr.efficiency};
            } catch (const NotDistillableError&) {
                rv.values = {nan_v, nan_v, nan_v};
                rv.status = "not-distillable";
            }
            break;
        }
        case Protocol::w_ratio: {
            const int parties = geti(pt, "N", cfg.parties);
            const channels::ADParams d(get(pt, "d", 0.0));
            const channels::NRWMParams w(get(pt, "w", 0.0));
            try {
                const auto tr = multipartite_edp::w_trajectory(
                    multipartite_edp::WScenario{parties, d, w, cfg.epsilon});
                try {
                    const auto ref = multipartite_edp::w_trajectory(
                        multipartite_edp::WScenario{
                            parties, d, channels::NRWMParams(0.0),
                            cfg.epsilon});
                    rv.values = {static_cast<double>(tr.steps),
                                 static_cast<double>(ref.steps),
                                 tr.efficiency / ref.efficiency};
                } catch (const NotDistillableError&) {
                    rv.values = {static_cast<double>(tr.steps), nan_v, nan_v};
                    rv.status = "nrwm-only";
                }
            } catch (const NotDistillableError&) {
                rv.values = {nan_v, nan_v, nan_v};
                rv.status = "not-distillable";
            }
            break;
        }
        case Protocol::w_asymptotic: {
            const int parties = geti(pt, "N", cfg.parties);
            const channels::ADParams d(get(pt, "d", 0.0));
            const channels::NRWMParams w(get(pt, "w", 0.0));
            const double dv = d.value();
            if (parties * dv / (1.0 - dv) >= 1.0) {
                rv.values = {nan_v};
                rv.status = "nrwm-only";  // the w = 0 reference never converges
            } else {
                rv.values = {multipartite_edp::asymptotic_ratio(parties, d, w)};
            }
            break;
        }
        case Protocol::optimal_w: {
            const int parties = geti(pt, "N", cfg.parties);
            const channels::ADParams d(get(pt, "d", 0.0));
            try {
                const auto best =
                    multipartite_edp::optimal_w(parties, d, cfg.epsilon);
                double e0 = nan_v;
                try {
                    e0 = multipartite_edp::w_trajectory(
                             multipartite_edp::WScenario{
                                 parties, d, channels::NRWMParams(0.0),
                                 cfg.epsilon})
                             .efficiency;
                } catch (const NotDistillableError&) {
                    rv.status = "nrwm-only";
                }
                rv.values = {best.w, best.efficiency, e0,
                             static_cast<double>(best.steps)};
            } catch (const NotDistillableError&) {
                rv.values = {nan_v, nan_v, nan_v, nan_v};
                rv.status = "not-distillable";
            }
            break;
        }
    }
    return rv;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

bool is_integral(double v) { return std::abs(v - std::llround(v)) < 1e-9; }

void check_axis_domain(const AxisSpec& ax, const std::vector<double>& values) {
    const std::string& n = ax.name;
    if (n == "d" || n == "d1" || n == "d2" || n == "w" || n == "w1" ||
        n == "w2") {
        if (values.front() < 0.0 || values.back() >= 1.0)
            throw ConfigError("axis " + n + ": values must lie in [0, 1)");
    } else if (n == "N") {
        for (double v : values)
            if (!is_integral(v) || v < 2.0)
                throw ConfigError("axis N: values must be integers >= 2");
    } else if (n == "m") {
        for (double v : values)
            if (!is_integral(v) || v < 1.0)
                throw ConfigError("axis m: values must be integers >= 1");
    } else if (n == "n") {
        for (double v : values)
            if (!is_integral(v) ||
                !is_power_of_two(static_cast<int>(std::llround(v))))
                throw ConfigError("axis n: values must be powers of two");
    } else {
        throw ConfigError("unknown sweep parameter: " + n);
    }
}

void check_fixed_domain(const std::string& name, double v) {
    if (name == "d" || name == "d1" || name == "d2" || name == "w" ||
        name == "w1" || name == "w2") {
        if (v < 0.0 || v >= 1.0)
            throw ConfigError("parameter " + name + " must lie in [0, 1)");
    } else if (name == "N") {
        if (!is_integral(v) || v < 2.0)
            throw ConfigError("parameter N must be an integer >= 2");
    } else if (name == "m") {
        if (!is_integral(v) || v < 1.0)
            throw ConfigError("parameter m must be an integer >= 1");
    } else if (name == "n") {
        if (!is_integral(v) || !is_power_of_two(static_cast<int>(std::llround(v))))
            throw ConfigError("parameter n must be a power of two");
    } else {
        throw ConfigError("unknown sweep parameter: " + name);
    }
}

// Validates the whole config and returns the materialized axis values.
std::vector<std::vector<double>> validate_config(const SweepConfig& cfg) {
    if (cfg.axes.empty())
        throw ConfigError("at least one sweep axis is required");
    if (!(cfg.epsilon > 0.0) || cfg.epsilon >= 1.0)
        throw ConfigError("epsilon must lie in (0, 1)");
    if (cfg.parties < 2) throw ConfigError("N must be at least 2");
    if (cfg.rounds < 1) throw ConfigError("m must be at least 1");
    if (cfg.protocol == Protocol::bell_bisection &&
        !is_power_of_two(cfg.copies))
        throw ConfigError("n must be a power of two");

    std::vector<std::vector<double>> values;
    for (std::size_t i = 0; i < cfg.axes.size(); ++i) {
        const AxisSpec& ax = cfg.axes[i];
        for (std::size_t j = 0; j < i; ++j)
            if (cfg.axes[j].name == ax.name)
                throw ConfigError("duplicate axis: " + ax.name);
        if (cfg.fixed.count(ax.name))
            throw ConfigError("parameter " + ax.name +
                              " given both as axis and as fixed value");
        values.push_back(ax.values());
        check_axis_domain(ax, values.back());
    }
    for (const auto& [name, v] : cfg.fixed) check_fixed_domain(name, v);
    return values;
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
    std::size_t workers = jobs < 1 ? 1 : static_cast<std::size_t>(jobs);
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::exception_ptr first;
    auto body = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(mu);
                if (!first) first = std::current_exception();
                next.store(count);  // drain the queue
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

double parse_number(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError(what + ": cannot parse number '" + text + "'");
    }
    if (pos != text.size())
        throw ConfigError(what + ": cannot parse number '" + text + "'");
    return v;
}

}  // namespace

Protocol protocol_from_name(const std::string& name) {
    const auto it = protocol_names().find(name);
    if (it == protocol_names().end())
        throw ConfigError("unknown protocol: " + name);
    return it->second;
}

const char* protocol_name(Protocol p) {
    for (const auto& [name, value] : protocol_names())
        if (value == p) return name.c_str();
    throw ConfigError("unhandled protocol");
}

std::vector<double> AxisSpec::values() const {
    if (!(step > 0.0))
        throw ConfigError("axis " + name + ": step must be positive");
    if (stop < start)
        throw ConfigError("axis " + name + ": stop lies below start");
    const double span = (stop - start) / step;
    long long count = std::llround(span);
    if (std::abs(start + static_cast<double>(count) * step - stop) >
        step * 1e-9)
        count = static_cast<long long>(std::floor(span + 1e-12));
    if (count < 0) count = 0;
    std::vector<double> out(static_cast<std::size_t>(count) + 1);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = start + static_cast<double>(i) * step;
    return out;
}

AxisSpec parse_axis(const std::string& name, const std::string& text) {
    AxisSpec ax;
    ax.name = name;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        ax.start = ax.stop = parse_number(text, "axis " + name);
        ax.step = 1.0;
        return ax;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        throw ConfigError("axis " + name + ": expected start:stop:step, got '" +
                          text + "'");
    ax.start = parse_number(text.substr(0, c1), "axis " + name);
    ax.stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "axis " + name);
    ax.step = parse_number(text.substr(c2 + 1), "axis " + name);
    return ax;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SweepResult run_sweep(const SweepConfig& cfg) {
    const std::vector<std::vector<double>> axis_values = validate_config(cfg);

    std::size_t total = 1;
    for (const auto& vals : axis_values) {
        if (total > 100000000 / vals.size())
            throw ResourceError("sweep grid too large");
        total *= vals.size();
    }

    SweepResult result;
    for (const auto& ax : cfg.axes) result.columns.push_back(ax.name);
    for (const auto& col : value_columns(cfg.protocol))
        result.columns.push_back(col);
    result.columns.push_back("status");
    result.rows.resize(total);

    parallel_for(total, cfg.jobs, [&](std::size_t index) {
        std::map<std::string, double> pt = cfg.fixed;
        std::string line;
        std::size_t rest = index;
        for (std::size_t a = cfg.axes.size(); a-- > 0;) {
            const auto& vals = axis_values[a];
            pt[cfg.axes[a].name] = vals[rest % vals.size()];
            rest /= vals.size();
        }
        const RowValues rv = evaluate(cfg, pt);
        for (const auto& ax : cfg.axes) {
            line += format_double(pt[ax.name]);
            line += ',';
        }
        for (double v : rv.values) {
            line += format_double(v);
            line += ',';
        }
        line += rv.status;
        result.rows[index] = std::move(line);
    });
    return result;
}

void write_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot open output file: " + path);
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
        if (i) out << ',';
        out << result.columns[i];
    }
    out << '\n';
    for (const auto& row : result.rows) out << row << '\n';
    out.flush();
    if (!out) throw ResourceError("write failed: " + path);
}

std::string sidecar_path(const std::string& csv_path) {
    std::string base = csv_path;
    if (base.size() > 4 && base.compare(base.size() - 4, 4, ".csv") == 0)
        base.resize(base.size() - 4);
    return base + ".meta.json";
}

void write_sidecar(const SweepConfig& cfg, const SweepResult& result,
                   const std::string& csv_path) {
    nlohmann::json j;
    j["tool"] = "qdistil";
    j["version"] = version;
    j["protocol"] = protocol_name(cfg.protocol);
    j["axes"] = nlohmann::json::array();
    for (const auto& ax : cfg.axes) {
        j["axes"].push_back({{"name", ax.name},
                             {"start", ax.start},
                             {"stop", ax.stop},
                             {"step", ax.step},
                             {"points", ax.values().size()}});
    }
    j["fixed"] = cfg.fixed;
    j["parties"] = cfg.parties;
    j["rounds"] = cfg.rounds;
    j["copies"] = cfg.copies;
    j["epsilon"] = cfg.epsilon;
    j["columns"] = result.columns;
    j["grid_points"] = result.rows.size();

    const std::string path = sidecar_path(csv_path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot open output file: " + path);
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw ResourceError("write failed: " + path);
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"1a", "1b", "1c", "1d", "2",
                                                 "3",  "4",  "5",  "6",  "7",
                                                 "8",  "9"};
    return ids;
}

SweepConfig figure_preset(const std::string& id) {
    const AxisSpec d_full{"d", 0.0, 0.99, 0.01};
    const AxisSpec w_full{"w", 0.0, 0.99, 0.01};
    const AxisSpec d_narrow{"d", 0.0025, 0.2475, 0.0025};

    SweepConfig cfg;
    if (id == "1a") {
        cfg.protocol = Protocol::bell_twocopy;
        cfg.axes = {AxisSpec{"d1", 0.0, 0.99, 0.01},
                    AxisSpec{"w1", 0.0, 0.99, 0.01}};
        cfg.fixed = {{"d2", 0.0}, {"w2", 0.0}};
    } else if (id == "1b") {
        cfg.protocol = Protocol::bell_twocopy;
        cfg.axes = {d_full, w_full};
    } else if (id == "1c" || id == "1d") {
        cfg.protocol = Protocol::bell_twocopy;
        cfg.axes = {AxisSpec{"w1", 0.0, 0.99, 0.01},
                    AxisSpec{"w2", 0.0, 0.99, 0.01}};
        if (id == "1c")
            cfg.fixed = {{"d1", 0.3}, {"d2", 0.7}};
        else
            cfg.fixed = {{"d1", 0.5}, {"d2", 0.5}};
    } else if (id == "2") {
        cfg.protocol = Protocol::bell_nonmax;
        cfg.axes = {d_full, w_full};
    } else if (id == "3") {
        cfg.protocol = Protocol::bell_bisection;
        cfg.axes = {d_full, w_full};
    } else if (id == "4") {
        cfg.protocol = Protocol::ghz;
        cfg.axes = {d_full, w_full};
    } else if (id == "5") {
        cfg.protocol = Protocol::w_state;
        cfg.axes = {d_narrow, w_full};
    } else if (id == "6") {
        cfg.protocol = Protocol::w_ratio;
        cfg.axes = {d_narrow, AxisSpec{"w", 0.0, 0.995, 0.005}};
    } else if (id == "7") {
        cfg.protocol = Protocol::optimal_w;
        cfg.axes = {AxisSpec{"d", 0.001, 0.249, 0.001}};
    } else if (id == "8") {
        cfg.protocol = Protocol::optimal_w;
        cfg.axes = {AxisSpec{"N", 3.0, 5.0, 1.0},
                    AxisSpec{"d", 0.005, 0.9, 0.005}};
    } else if (id == "9") {
        cfg.protocol = Protocol::w_asymptotic;
        cfg.axes = {d_narrow, w_full};
    } else {
        throw ConfigError("unknown figure id: " + id);
    }
    return cfg;
}

oracle::ValidationSummary run_validation(std::uint64_t seed, int samples,
                                         const std::string& report_path) {
    const oracle::ValidationSummary summary = oracle::run_all(seed, samples);
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw ResourceError("cannot open output file: " + report_path);
        out << "quantity,closed_form,simulated,abs_error,pass\n";
        for (const auto& row : summary.rows) {
            out << '"' << row.quantity << "\"," << format_double(row.closed_form)
                << ',' << format_double(row.simulated) << ','
                << format_double(row.abs_error) << ',' << (row.pass ? 1 : 0)
                << '\n';
        }
        out.flush();
        if (!out) throw ResourceError("write failed: " + report_path);
    }
    return summary;
}

}  // namespace qdistil::sweep
