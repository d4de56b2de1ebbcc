// cqlab: family listings, central values and moment experiments for cubic
// and quartic Dirichlet characters.
//
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <cmath>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cqlab/cli.hpp"
#include "cqlab/errors.hpp"
#include "cqlab/parallel.hpp"

namespace {

struct Flags {
    std::string family = "cubic";
    double xmax = 10000;
    std::vector<double> xsweep;
    std::vector<double> ks;
    std::vector<cqlab::u64> twists;
    std::vector<cqlab::u64> cs;
    std::vector<cqlab::u64> ladder;
    std::vector<int> ms;
    std::string cache = "lvalues.csv";
    unsigned threads = cqlab::default_threads();
    std::string out = ".";
    std::string method = "afe";
    double slack = 2.0;
    cqlab::u64 y = 100;
    double threshold = 1e-4;
    double afe_target = 5e-11;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--family", f.family, "cubic or quartic")->capture_default_str();
    cmd->add_option("--xmax", f.xmax, "largest conductor")->capture_default_str();
    cmd->add_option("--threads", f.threads, "worker threads")->capture_default_str();
    cmd->add_option("--out", f.out, "output directory")->capture_default_str();
}

void add_cache(CLI::App* cmd, Flags& f) {
    cmd->add_option("--cache", f.cache, "L-value cache CSV")->capture_default_str();
}

cqlab::RunConfig to_config(const Flags& f) {
    cqlab::RunConfig c;
    c.family = cqlab::parse_family(f.family);
    if (!(f.xmax >= 1) || f.xmax != std::floor(f.xmax) || f.xmax > 1e12) {
        throw cqlab::UsageError("--xmax must be a positive integer");
    }
    c.xmax = static_cast<cqlab::u64>(f.xmax);
    c.xsweep = f.xsweep;
    if (!f.ks.empty()) c.ks = f.ks;
    if (!f.twists.empty()) c.twists = f.twists;
    if (!f.cs.empty()) c.cs = f.cs;
    if (!f.ladder.empty()) c.ladder = f.ladder;
    if (!f.ms.empty()) c.ms = f.ms;
    c.cache = f.cache;
    c.threads = f.threads;
    c.out = f.out;
    c.method = f.method;
    c.slack = f.slack;
    c.y = f.y;
    c.threshold = f.threshold;
    c.afe_target = f.afe_target;
    c.validate();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cqlab: moments of cubic and quartic Dirichlet L-functions at the central point"};
    app.require_subcommand(1);
    Flags f;

    auto* enumerate = app.add_subcommand("enumerate", "write the family CSV for conductors <= xmax");
    add_common(enumerate, f);

    auto* lvalues = app.add_subcommand("lvalues", "populate the L-value cache (resumable)");
    add_common(lvalues, f);
    add_cache(lvalues, f);
    lvalues->add_option("--method", f.method, "afe, direct or both")->capture_default_str();
    lvalues->add_option("--afe-target", f.afe_target, "tail bound per AFE sum")->capture_default_str();

    std::string which;
    auto* experiment = app.add_subcommand("experiment", "run one experiment and write its report");
    experiment->add_option("which", which, "first-moment, moments, polya, holder, logbound, nonvanishing, primesum, constants")
        ->required();
    add_common(experiment, f);
    add_cache(experiment, f);
    experiment->add_option("--xsweep", f.xsweep, "comma-separated X values")->delimiter(',');
    experiment->add_option("--k", f.ks, "comma-separated moment exponents")->delimiter(',');
    experiment->add_option("--twist", f.twists, "comma-separated twists l")->delimiter(',');
    experiment->add_option("--c", f.cs, "comma-separated c for character sums")->delimiter(',');
    experiment->add_option("--ladder", f.ladder, "comma-separated mollifier ladder l_1 > l_2 > ...")->delimiter(',');
    experiment->add_option("--m", f.ms, "comma-separated prime-sum moment orders")->delimiter(',');
    experiment->add_option("--y", f.y, "prime-sum length")->capture_default_str();
    experiment->add_option("--slack", f.slack, "constant replacing the O-terms of the log bound")->capture_default_str();
    experiment->add_option("--threshold", f.threshold, "non-vanishing threshold")->capture_default_str();

    auto* constants = app.add_subcommand("constants", "print the arithmetic constants of a family");
    constants->add_option("--family", f.family, "cubic or quartic")->capture_default_str();
    std::string constants_out;
    constants->add_option("--out", constants_out, "also write constants_<family>.json here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*constants) {
            const auto family = cqlab::parse_family(f.family);
            std::cout << cqlab::constants_json(family).dump(2) << "\n";
            if (!constants_out.empty()) {
                cqlab::RunConfig c;
                c.family = family;
                c.out = constants_out;
                cqlab::cmd_constants(c);
            }
            return 0;
        }
        const auto config = to_config(f);
        if (*enumerate) {
            std::cout << cqlab::cmd_enumerate(config) << "\n";
        } else if (*lvalues) {
            const auto s = cqlab::cmd_lvalues(config);
            std::cout << "members " << s.members << ", computed " << s.computed << ", already cached " << s.skipped
                      << "\n";
            if (!s.compare_path.empty()) {
                std::cout << "max |afe - direct| " << s.max_abs_difference << " (" << s.compare_path << ")\n";
            }
        } else if (*experiment) {
            for (const auto& path : cqlab::cmd_experiment(config, which)) std::cout << path << "\n";
        }
    } catch (const cqlab::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
