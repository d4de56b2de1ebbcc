#include "cqlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "cqlab/characters.hpp"
#include "cqlab/constants.hpp"
#include "cqlab/errors.hpp"
#include "cqlab/l_engine.hpp"
#include "cqlab/lvalue_cache.hpp"
#include "cqlab/moment_lab.hpp"
#include "cqlab/parallel.hpp"

namespace cqlab {

namespace {

constexpr std::size_t kChunk = 2048;

std::string out_path(const RunConfig& config, const std::string& name) {
    return (std::filesystem::path(config.out) / name).string();
}

u64 phi_top(double X) { return static_cast<u64>(std::ceil(2.0 * X)) - 1; }

std::string label(const char* name, double v) { return std::string(name) + "=" + format_double(v); }
std::string label(const char* name, u64 v) { return std::string(name) + "=" + std::to_string(v); }

struct Loaded {
    FamilySlice slice;
    std::vector<std::complex<double>> L;
};

Loaded load(const RunConfig& config, u64 qmax) {
    Loaded d;
    d.slice = enumerate_family(config.family, qmax);
    const LValueCache cache(config.cache);
    d.L = cache.values_for(d.slice);
    return d;
}

nlohmann::ordered_json member_json(const PrimitiveCharacter& chi) {
    nlohmann::ordered_json j;
    j["q"] = chi.conductor();
    j["gen_a"] = chi.gen_a().get_str();
    j["gen_b"] = chi.gen_b().get_str();
    return j;
}

MomentReport first_moment(const RunConfig& config) {
    const auto xs = config.sweep();
    const double xmax = *std::max_element(xs.begin(), xs.end());
    const auto data = load(config, phi_top(xmax));
    MomentReport r;
    r.experiment = "first-moment";
    r.family = config.family;
    r.config = config.to_json();
    r.notes = {"sum of L(1/2, chi) chi(l) Phi(q/X) over members with X < q < 2X",
               "error terms carry unspecified constants; judge the ratio by its trend in X"};
    nlohmann::ordered_json decomp = nlohmann::ordered_json::array();
    for (u64 ell : config.twists) {
        const auto t = decompose_twist(config.family, ell);
        decomp.push_back({{"l", ell}, {"parts", t.parts}});
    }
    r.details["decompositions"] = decomp;

    std::map<std::pair<u64, double>, std::pair<double, double>> values;  // (l, X) -> (empirical, predicted)
    for (u64 ell : config.twists) {
        for (double X : xs) {
            ReportRow row;
            row.X = X;
            row.parameter = label("l", ell);
            row.empirical = empirical_first_moment(data.slice, data.L, X, ell);
            const auto pred = predicted_first_moment(config.family, X, ell);
            row.predicted = pred.value;
            row.predicted_error = pred.error;
            values[{ell, X}] = {row.empirical.real(), pred.value};
            r.rows.push_back(std::move(row));
        }
    }
    if (std::find(config.twists.begin(), config.twists.end(), 1) != config.twists.end()) {
        nlohmann::ordered_json twisted = nlohmann::ordered_json::array();
        for (u64 ell : config.twists) {
            if (ell == 1) continue;
            for (double X : xs) {
                const auto [e1, p1] = values[{1, X}];
                const auto [el, pl] = values[{ell, X}];
                const double emp = el / e1;
                const double pred = pl / p1;
                twisted.push_back({{"X", X},
                                   {"l", ell},
                                   {"empirical_ratio", emp},
                                   {"predicted_ratio", pred},
                                   {"relative_deviation", emp / pred - 1.0}});
            }
        }
        r.details["twisted_ratios"] = twisted;
    }
    return r;
}

MomentReport moments(const RunConfig& config) {
    const auto xs = config.sweep();
    const double xmax = *std::max_element(xs.begin(), xs.end());
    const auto data = load(config, static_cast<u64>(std::floor(xmax)));
    MomentReport r;
    r.experiment = "moments";
    r.family = config.family;
    r.config = config.to_json();
    r.notes = {"sum of |L(1/2, chi)|^{2k} over members with q <= X (sharp cutoff)",
               "slope: least-squares slope of log(moment / X) against log log X; compare with k^2"};
    nlohmann::ordered_json slopes = nlohmann::ordered_json::array();
    for (double k : config.ks) {
        std::vector<double> m;
        for (double X : xs) {
            ReportRow row;
            row.X = X;
            row.parameter = label("k", k);
            row.empirical = moment_2k(data.slice, data.L, X, k);
            m.push_back(row.empirical.real());
            r.rows.push_back(std::move(row));
        }
        nlohmann::ordered_json s{{"k", k}, {"k_squared", k * k}};
        if (xs.size() >= 2 && std::all_of(m.begin(), m.end(), [](double v) { return v > 0; })) {
            s["slope"] = moment_growth_slope(xs, m);
        } else {
            s["slope"] = nullptr;
        }
        slopes.push_back(s);
    }
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    for (double X : xs) counts.push_back({{"X", X}, {"members", moment_2k(data.slice, data.L, X, 0.0)}});
    r.details["regression"] = slopes;
    r.details["family_counts"] = counts;
    return r;
}

MomentReport polya(const RunConfig& config) {
    const auto xs = config.sweep();
    const double xmax = *std::max_element(xs.begin(), xs.end());
    const auto slice = enumerate_family(config.family, phi_top(xmax));
    MomentReport r;
    r.experiment = "polya";
    r.family = config.family;
    r.config = config.to_json();
    r.notes = {"sum of chi(c) Phi(q/X) over the family",
               config.family == Family::Cubic ? "main term c_K Phi^(1) X g(3c) when c is a cube, else 0"
                                              : "main term c_K Phi^(1) X g(2c) when c is a fourth power, else 0"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (u64 c : config.cs) {
        for (double X : xs) {
            const auto p = polya_sum(slice, X, c);
            ReportRow row;
            row.X = X;
            row.parameter = label("c", c);
            row.empirical = p.empirical;
            row.predicted = p.predicted.value;
            row.predicted_error = p.predicted.error;
            const double bound = std::pow(X, 0.75);
            rows.push_back({{"X", X},
                            {"c", c},
                            {"is_power", p.is_power},
                            {"abs_empirical", std::abs(p.empirical)},
                            {"X^0.75", bound},
                            {"within_X^0.75", std::abs(p.empirical) <= bound}});
            r.rows.push_back(std::move(row));
        }
    }
    r.details["rows"] = rows;
    return r;
}

MomentReport holder(const RunConfig& config) {
    const auto xs = config.sweep();
    const double xmax = *std::max_element(xs.begin(), xs.end());
    const auto data = load(config, phi_top(xmax));
    MomentReport r;
    r.experiment = "holder";
    r.family = config.family;
    r.config = config.to_json();
    r.notes = {"empirical: Re sum L N(chi, k-1) N(conj chi, k) Phi(q/X)",
               "predicted: (sum |L|^{2k} Phi)^{1/2k} (sum prod(|N_j|^2 + |Q_j|^2) Phi)^{(2k-1)/2k}",
               "holds: empirical <= predicted (1 + 1e-9)"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double k : config.ks) {
        for (double X : xs) {
            const auto mc = MollifierConfig::with_ladder(X, config.ladder);
            const auto h = holder_check(data.slice, data.L, X, k, mc, config.threads);
            ReportRow row;
            row.X = X;
            row.parameter = label("k", k);
            row.empirical = h.lhs;
            row.predicted = h.rhs;
            nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
            for (const auto& b : mc.blocks) blocks.push_back(b.size());
            rows.push_back({{"X", X},
                            {"k", k},
                            {"lhs_re", h.lhs.real()},
                            {"lhs_im", h.lhs.imag()},
                            {"moment_sum", h.moment_sum},
                            {"mollifier_sum", h.mollifier_sum ? nlohmann::ordered_json(*h.mollifier_sum) : nullptr},
                            {"rhs", h.rhs},
                            {"holds", h.holds},
                            {"terms", h.terms},
                            {"ladder", mc.ladder},
                            {"block_sizes", blocks}});
            r.rows.push_back(std::move(row));
        }
    }
    r.details["rows"] = rows;
    return r;
}

MomentReport logbound(const RunConfig& config) {
    const auto xs = config.sweep();
    const double xmax = *std::max_element(xs.begin(), xs.end());
    const auto data = load(config, static_cast<u64>(std::floor(xmax)));
    MomentReport r;
    r.experiment = "logbound";
    r.family = config.family;
    r.config = config.to_json();
    r.notes = {"x = q and log X taken at the sweep point X; O-terms replaced by the slack constant",
               "empirical: fraction of members q <= X where log |L(1/2, chi)| <= rhs; diagnostic only"};
    nlohmann::ordered_json violations = nlohmann::ordered_json::array();
    for (double X : xs) {
        const auto [first, last] = data.slice.conductor_range(1, static_cast<u64>(std::floor(X)));
        require_lvalues(data.slice, data.L, 1, static_cast<u64>(std::floor(X)));
        const std::size_t n = last - first;
        for (auto variant : {LogBoundVariant::Lambda0, LogBoundVariant::One}) {
            std::vector<LogBoundResult> results(n);
            std::vector<char> zero(n, 0);
            parallel_for(n, config.threads, [&](std::size_t t) {
                const auto& chi = data.slice.members[first + t];
                if (std::abs(data.L[first + t]) == 0.0) {
                    zero[t] = 1;
                    return;
                }
                results[t] = grh_log_bound_check(chi, data.L[first + t], static_cast<double>(chi.conductor()), X,
                                                 variant, config.slack);
            });
            std::size_t holds = 0, counted = 0;
            const char* name = variant == LogBoundVariant::Lambda0 ? "lambda0" : "one";
            for (std::size_t t = 0; t < n; ++t) {
                if (zero[t]) continue;
                ++counted;
                if (results[t].holds) {
                    ++holds;
                } else {
                    auto v = member_json(data.slice.members[first + t]);
                    v["X"] = X;
                    v["variant"] = name;
                    v["L_re"] = data.L[first + t].real();
                    v["L_im"] = data.L[first + t].imag();
                    v["lhs"] = results[t].lhs;
                    v["rhs"] = results[t].rhs;
                    violations.push_back(v);
                }
            }
            ReportRow row;
            row.X = X;
            row.parameter = name;
            row.empirical = counted == 0 ? 0.0 : static_cast<double>(holds) / static_cast<double>(counted);
            r.rows.push_back(std::move(row));
        }
    }
    r.details["violations"] = violations;
    return r;
}

MomentReport nonvanishing(const RunConfig& config) {
    const auto xs = config.sweep();
    const double xmax = *std::max_element(xs.begin(), xs.end());
    const auto data = load(config, static_cast<u64>(std::floor(xmax)));
    MomentReport r;
    r.experiment = "nonvanishing";
    r.family = config.family;
    r.config = config.to_json();
    r.notes = {"empirical: proportion of members q <= X with |L(1/2, chi)| above the threshold"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double X : xs) {
        const auto nv = nonvanishing_count(data.slice, data.L, X, config.threshold);
        ReportRow row;
        row.X = X;
        row.parameter = label("threshold", config.threshold);
        row.empirical = nv.proportion;
        nlohmann::ordered_json below = nlohmann::ordered_json::array();
        for (std::size_t i : nv.below) {
            auto m = member_json(data.slice.members[i]);
            m["abs_L"] = std::abs(data.L[i]);
            below.push_back(m);
        }
        rows.push_back({{"X", X}, {"count", nv.count}, {"total", nv.total}, {"below_threshold", below}});
        r.rows.push_back(std::move(row));
    }
    r.details["rows"] = rows;
    return r;
}

MomentReport primesum(const RunConfig& config) {
    const auto xs = config.sweep();
    const double xmax = *std::max_element(xs.begin(), xs.end());
    const auto slice = enumerate_family(config.family, static_cast<u64>(std::floor(xmax)));
    MomentReport r;
    r.experiment = "primesum";
    r.family = config.family;
    r.config = config.to_json();
    r.notes = {"empirical: sum over X/2 < q <= X of |sum_{p <= y} chi(p) p^{-1/2}|^{2m}, a(p) = 1",
               "predicted: main shape of the moment bound without its implied constant"};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    const auto one = [](u64) { return std::complex<double>(1.0, 0.0); };
    for (int m : config.ms) {
        for (double X : xs) {
            const auto pm = prime_sum_moment(slice, X, config.y, m, one, config.threads);
            ReportRow row;
            row.X = X;
            row.parameter = label("m", static_cast<u64>(m));
            row.empirical = pm.empirical;
            row.predicted = pm.main_shape;
            rows.push_back({{"X", X}, {"m", m}, {"terms", pm.terms}, {"error_shape", pm.error_shape}});
            r.rows.push_back(std::move(row));
        }
    }
    r.details["y"] = config.y;
    r.details["rows"] = rows;
    return r;
}

}  // namespace

void RunConfig::validate() const {
    if (xmax < 1) throw UsageError("--xmax must be at least 1");
    for (double X : xsweep) {
        if (!(X >= 2.0) || !std::isfinite(X)) throw UsageError("--xsweep values must be at least 2");
    }
    if (ks.empty() || twists.empty() || cs.empty() || ms.empty() || ladder.empty()) {
        throw UsageError("parameter lists must be nonempty");
    }
    for (double k : ks) {
        if (!(k >= 0.0) || !std::isfinite(k)) throw UsageError("--k values must be nonnegative");
    }
    for (u64 t : twists) {
        if (t == 0) throw UsageError("--twist values must be positive");
    }
    for (u64 c : cs) {
        if (c == 0) throw UsageError("--c values must be positive");
    }
    for (int m : ms) {
        if (m < 1) throw UsageError("--m values must be positive");
    }
    if (method != "afe" && method != "direct" && method != "both") {
        throw UsageError("--method must be afe, direct or both");
    }
    if (!(afe_target > 0.0) || !(threshold >= 0.0) || !(slack >= 0.0)) {
        throw UsageError("precisions must be positive and slack nonnegative");
    }
    if (y < 2) throw UsageError("--y must be at least 2");
    if (cache.empty()) throw UsageError("--cache must name a file");
}

std::vector<double> RunConfig::sweep() const {
    if (xsweep.empty()) return {static_cast<double>(xmax)};
    return xsweep;
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = std::string(to_string(family));
    j["xmax"] = xmax;
    j["xsweep"] = sweep();
    j["k"] = ks;
    j["twist"] = twists;
    j["c"] = cs;
    j["method"] = method;
    j["slack"] = slack;
    j["ladder"] = ladder;
    j["y"] = y;
    j["m"] = ms;
    j["threshold"] = threshold;
    j["afe_target"] = afe_target;
    return j;
}

std::string cmd_enumerate(const RunConfig& config) {
    config.validate();
    const auto slice = enumerate_family(config.family, config.xmax);
    std::ostringstream os;
    write_family_csv(slice, os);
    const auto path = out_path(config, "family_" + std::string(to_string(config.family)) + "_" +
                                           std::to_string(config.xmax) + ".csv");
    write_text_file(path, os.str());
    return path;
}

LValuesSummary cmd_lvalues(const RunConfig& config) {
    config.validate();
    const bool want_direct = config.method != "afe";
    if (want_direct && config.xmax > kDirectConductorCap) {
        throw ConductorTooLargeForOracle("--method " + config.method + " needs --xmax <= " +
                                         std::to_string(kDirectConductorCap));
    }
    const auto slice = enumerate_family(config.family, config.xmax);
    LValueCache cache(config.cache);
    LValuesSummary summary;
    summary.members = slice.members.size();

    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < slice.members.size(); ++i) {
        if (!cache.find(slice.members[i].id())) missing.push_back(i);
    }
    summary.skipped = summary.members - missing.size();

    const bool direct_only = config.method == "direct";
    GaussPeriodTable periods;
    if (!missing.empty() && !direct_only) periods = GaussPeriodTable(slice, config.threads);

    std::size_t pos = 0;
    while (pos < missing.size()) {
        // A run of consecutive missing members, cut into chunks.
        std::size_t end = pos + 1;
        while (end < missing.size() && missing[end] == missing[end - 1] + 1 && end - pos < kChunk) ++end;
        const std::size_t a = missing[pos], b = missing[end - 1] + 1;
        const auto records = direct_only ? direct_central_values(slice, a, b, config.threads)
                                         : afe_central_values(slice, a, b, config.threads, &periods, config.afe_target);
        cache.append(records);
        summary.computed += records.size();
        pos = end;
    }
    cache.finalize();

    if (config.method == "both") {
        const auto direct = direct_central_values(slice, 0, slice.members.size(), config.threads);
        std::string text = "family,q,gen_a,gen_b,afe_re,afe_im,direct_re,direct_im,abs_difference\n";
        for (std::size_t i = 0; i < slice.members.size(); ++i) {
            const auto& chi = slice.members[i];
            const auto* row = cache.find(chi.id());
            const auto afe = row->value;
            const double diff = std::abs(afe - direct[i].value);
            summary.max_abs_difference = std::max(summary.max_abs_difference, diff);
            text += std::string(to_string(chi.family())) + "," + std::to_string(chi.conductor()) + "," +
                    chi.gen_a().get_str() + "," + chi.gen_b().get_str() + "," + format_double(afe.real()) + "," +
                    format_double(afe.imag()) + "," + format_double(direct[i].value.real()) + "," +
                    format_double(direct[i].value.imag()) + "," + format_double(diff) + "\n";
        }
        summary.compare_path = out_path(config, "lvalues_compare_" + std::string(to_string(config.family)) + "_" +
                                                    std::to_string(config.xmax) + ".csv");
        write_text_file(summary.compare_path, text);
    }
    return summary;
}

MomentReport run_experiment(const RunConfig& config, std::string_view which) {
    config.validate();
    if (which == "first-moment") return first_moment(config);
    if (which == "moments") return moments(config);
    if (which == "polya") return polya(config);
    if (which == "holder") return holder(config);
    if (which == "logbound") return logbound(config);
    if (which == "nonvanishing") return nonvanishing(config);
    if (which == "primesum") return primesum(config);
    throw UsageError("unknown experiment '" + std::string(which) + "'");
}

nlohmann::ordered_json constants_json(Family family) {
    const auto& K = euler_constants(family);
    nlohmann::ordered_json j;
    j["family"] = std::string(to_string(family));
    j["r_K"] = K.r_K;
    j["zeta_K2"] = K.zeta_K2;
    j["c_K"] = K.c_K;
    j["phi_hat_1"] = K.phi_hat_1;
    j["precision"] = K.precision;
    return j;
}

std::string cmd_constants(const RunConfig& config) {
    const auto path = out_path(config, "constants_" + std::string(to_string(config.family)) + ".json");
    write_text_file(path, constants_json(config.family).dump(2) + "\n");
    return path;
}

std::vector<std::string> cmd_experiment(const RunConfig& config, std::string_view which) {
    if (which == "constants") {
        config.validate();
        return {cmd_constants(config)};
    }
    const auto report = run_experiment(config, which);
    write_report(report, config.out);
    const auto base = (std::filesystem::path(config.out) / report.file_stem()).string();
    return {base + ".json", base + ".csv"};
}

}  // namespace cqlab
