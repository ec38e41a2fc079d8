#ifndef STIEFEL_TOOLS_CLI_HPP
#define STIEFEL_TOOLS_CLI_HPP

#include <array>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stiefel/selftest.hpp"
#include "stiefel/stiefel.hpp"

namespace stiefel::cli {

enum ExitCode : int {
    kSuccess = 0,
    kPropertyFailure = 1,
    kParseError = 2,
    kRankError = 3,
    kShapeError = 4,
};

enum class Subcommand { Retract, Path, Qr, Check, Selftest };
enum class Format { Json, Csv };

struct RunConfig {
    Subcommand subcommand = Subcommand::Selftest;
    std::optional<std::string> input_path;
    std::optional<std::string> output_path;
    Format format = Format::Json;
    std::optional<std::uint64_t> seed;
    std::size_t steps = 11;
    double tolerance = 1e-9;
    std::optional<std::pair<std::size_t, std::size_t>> dims;
    std::size_t batch = 1;
    std::size_t threads = 1;
    bool inject_fault = false;
};

/// Usage problems detected after argument parsing; reported as exit 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
    static const std::regex pattern(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
    std::smatch match;
    if (!std::regex_match(text, match, pattern)) {
        throw UsageError("--dims expects MxD, got \"" + text + "\"");
    }
    const auto m = std::stoul(match[1].str());
    const auto d = std::stoul(match[2].str());
    if (m == 0 || d == 0) {
        throw UsageError("--dims entries must be positive");
    }
    return {m, d};
}

/// STIEFEL_RETRACT_THREADS if set to a positive integer, otherwise the
/// machine's hardware concurrency.
inline std::size_t threads_from_env() {
    if (const char* env = std::getenv("STIEFEL_RETRACT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return hardware_threads();
}

inline int exit_code_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::Parse:
    case ErrorCode::NonFinite:
        return kParseError;
    case ErrorCode::Dimension:
        return kShapeError;
    case ErrorCode::RankDeficient:
    case ErrorCode::NumericalRankLoss:
    case ErrorCode::InternalRankLoss:
    case ErrorCode::ZeroVector:
    case ErrorCode::NotOrthonormal:
        return kRankError;
    default:
        return kRankError;
    }
}

struct Item {
    InjectiveMap map;
    std::size_t resamples;
};

namespace detail {

inline bool consumes_data(Subcommand s) { return s != Subcommand::Selftest; }

inline void check_config(const RunConfig& cfg) {
    if (!consumes_data(cfg.subcommand)) {
        return;
    }
    if (cfg.input_path.has_value() == cfg.dims.has_value()) {
        throw UsageError("exactly one of --input or --dims is required");
    }
    if (cfg.input_path && cfg.batch != 1 && cfg.subcommand != Subcommand::Check) {
        throw UsageError("--batch needs --dims (or the check subcommand)");
    }
    if (cfg.subcommand == Subcommand::Check && cfg.dims && !cfg.seed) {
        throw UsageError("check with --dims requires --seed");
    }
}

/// Per-item inputs: the parsed file, or `batch` generated maps with entries
/// uniform in [-1, 1], redrawn whenever validation fails.
inline std::vector<Item> load_items(const RunConfig& cfg, std::size_t count) {
    std::vector<Item> items;
    if (cfg.input_path) {
        items.push_back({validate_injective(read_matrix_file(*cfg.input_path)), 0});
        return items;
    }
    const auto [m, d] = *cfg.dims;
    if (d > m) {
        throw DimensionError("--dims " + std::to_string(m) + "x" + std::to_string(d) +
                             " has more columns than rows");
    }
    const std::uint64_t seed = cfg.seed.value_or(0);
    std::vector<std::optional<Item>> slots(count);
    parallel_for(count, cfg.threads, [&](std::size_t k) {
        Rng rng(derive_seed(seed, k));
        auto g = random_injective(m, d, rng, std::numeric_limits<double>::infinity());
        slots[k].emplace(Item{std::move(g.map), g.resamples});
    });
    for (auto& s : slots) {
        items.push_back(std::move(*s));
    }
    return items;
}

inline std::size_t total_resamples(const std::vector<Item>& items) {
    std::size_t n = 0;
    for (const auto& it : items) {
        n += it.resamples;
    }
    return n;
}

inline void report_generation(const RunConfig& cfg, const std::vector<Item>& items, std::ostream& err) {
    if (cfg.dims) {
        err << "generated " << items.size() << " input(s), " << total_resamples(items)
            << " resample(s)\n";
    }
}

template <typename T, typename Fn>
std::vector<T> map_items(const RunConfig& cfg, const std::vector<Item>& items, Fn&& fn) {
    std::vector<std::optional<T>> slots(items.size());
    parallel_for(items.size(), cfg.threads, [&](std::size_t k) { slots[k].emplace(fn(items[k])); });
    std::vector<T> out;
    out.reserve(items.size());
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

inline std::string item_header(std::size_t k, std::size_t n) {
    return n > 1 ? "# item " + std::to_string(k) + "\n" : std::string{};
}

} // namespace detail

// ---------------------------------------------------------------------------

inline std::string cmd_retract(const RunConfig& cfg, std::ostream& err) {
    const auto items = detail::load_items(cfg, cfg.batch);
    detail::report_generation(cfg, items, err);
    const auto frames = detail::map_items<StiefelFrame>(cfg, items, [](const Item& it) {
        return retract(it.map);
    });

    if (cfg.format == Format::Json) {
        json arr = json::array();
        for (std::size_t k = 0; k < items.size(); ++k) {
            json diag{{"ortho_defect", orthonormality_defect(frames[k].matrix())},
                      {"condition_estimate", items[k].map.condition_estimate()}};
            if (cfg.dims) {
                diag["resamples"] = items[k].resamples;
            }
            arr.push_back({{"frame", to_json(frames[k].matrix())}, {"diagnostics", diag}});
        }
        return (arr.size() == 1 ? arr.front() : arr).dump(2) + "\n";
    }
    std::string out;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k > 0) {
            out += '\n';
        }
        out += detail::item_header(k, items.size());
        out += to_csv(frames[k].matrix());
        out += "# ortho_defect=" + format_double(orthonormality_defect(frames[k].matrix())) + "\n";
        out += "# condition_estimate=" + format_double(items[k].map.condition_estimate()) + "\n";
        if (cfg.dims) {
            out += "# resamples=" + std::to_string(items[k].resamples) + "\n";
        }
    }
    return out;
}

inline std::string cmd_path(const RunConfig& cfg, std::ostream& err) {
    const auto items = detail::load_items(cfg, cfg.batch);
    detail::report_generation(cfg, items, err);
    const auto paths = detail::map_items<HomotopyPath>(cfg, items, [&](const Item& it) {
        return trace_path(it.map, cfg.steps);
    });
    if (cfg.format == Format::Json) {
        if (paths.size() == 1) {
            return path_to_json(paths.front()).dump(2) + "\n";
        }
        json arr = json::array();
        for (const auto& p : paths) {
            arr.push_back(path_to_json(p));
        }
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t k = 0; k < paths.size(); ++k) {
        if (k > 0) {
            out += '\n';
        }
        out += detail::item_header(k, paths.size());
        out += path_to_csv(paths[k]);
    }
    return out;
}

inline std::string cmd_qr(const RunConfig& cfg, std::ostream& err) {
    if (cfg.dims && cfg.dims->first != cfg.dims->second) {
        throw DimensionError("qr requires a square matrix");
    }
    const auto items = detail::load_items(cfg, cfg.batch);
    detail::report_generation(cfg, items, err);
    for (const auto& it : items) {
        if (it.map.rows() != it.map.cols()) {
            throw DimensionError("qr requires a square matrix");
        }
    }
    const auto factors = detail::map_items<QrResult>(cfg, items, [](const Item& it) {
        return qr_decompose(it.map);
    });
    auto defect = [&](std::size_t k) {
        return max_abs_diff(factors[k].q.matrix() * factors[k].r, items[k].map.matrix());
    };
    if (cfg.format == Format::Json) {
        json arr = json::array();
        for (std::size_t k = 0; k < factors.size(); ++k) {
            arr.push_back({{"Q", to_json(factors[k].q.matrix())},
                           {"R", to_json(factors[k].r.to_dense())},
                           {"reconstruction_defect", defect(k)}});
        }
        return (arr.size() == 1 ? arr.front() : arr).dump(2) + "\n";
    }
    std::string out;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k > 0) {
            out += '\n';
        }
        out += detail::item_header(k, factors.size());
        out += "# Q\n" + to_csv(factors[k].q.matrix());
        out += "\n# R\n" + to_csv(factors[k].r.to_dense());
        out += "# reconstruction_defect=" + format_double(defect(k)) + "\n";
    }
    return out;
}

struct CheckOutcome {
    std::string text;
    bool all_passed;
};

inline CheckOutcome cmd_check(const RunConfig& cfg, std::ostream& err) {
    const std::uint64_t seed = cfg.seed.value_or(0);
    const auto items = detail::load_items(cfg, cfg.input_path ? 1 : cfg.batch);
    detail::report_generation(cfg, items, err);
    static constexpr std::array<double, 5> ts{0.0, 0.25, 0.5, 0.75, 1.0};

    std::vector<std::optional<EquivarianceReport>> slots(cfg.batch);
    parallel_for(cfg.batch, cfg.threads, [&](std::size_t k) {
        const auto& alpha = items[cfg.input_path ? 0 : k].map;
        const auto o = random_rotation(alpha.rows(), derive_seed(derive_seed(seed, k), 1));
        slots[k].emplace(check_equivariance(alpha, o, ts, cfg.tolerance));
    });

    std::size_t passed = 0;
    std::string out;
    if (cfg.format == Format::Csv) {
        out += "item,frame_defect,coefficient_defect,max_homotopy_defect,passed\n";
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& r = *slots[k];
        passed += r.passed ? 1 : 0;
        if (cfg.format == Format::Json) {
            out += to_json(r).dump() + "\n";
        } else {
            double worst = 0.0;
            for (const auto& [t, d] : r.homotopy_defects) {
                worst = std::max(worst, d);
            }
            out += std::to_string(k) + "," + format_double(r.frame_defect) + "," +
                   format_double(r.coefficient_defect) + "," + format_double(worst) + "," +
                   (r.passed ? "true" : "false") + "\n";
        }
    }
    out += "passed " + std::to_string(passed) + "/" + std::to_string(slots.size()) + "\n";
    return {std::move(out), passed == slots.size()};
}

inline CheckOutcome cmd_selftest(const RunConfig& cfg) {
    SelftestOptions opts;
    opts.seed = cfg.seed.value_or(kDefaultSelftestSeed);
    opts.inject_fault = cfg.inject_fault;
    opts.threads = cfg.threads;
    const auto results = run_selftest(opts);

    std::size_t passed = 0;
    std::ostringstream out;
    if (cfg.format == Format::Json) {
        json arr = json::array();
        for (const auto& r : results) {
            passed += r.passed ? 1 : 0;
            arr.push_back({{"id", r.id},
                           {"name", r.name},
                           {"passed", r.passed},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
        }
        out << arr.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            passed += r.passed ? 1 : 0;
            out << std::left << std::setw(20) << r.id << std::setw(44) << r.name
                << (r.passed ? "PASS  " : "FAIL  ") << std::right << std::fixed
                << std::setprecision(2) << std::setw(7) << r.seconds << "s  " << r.detail << "\n";
        }
    }
    out << "passed " << passed << "/" << results.size() << "\n";
    return {out.str(), passed == results.size()};
}

/// Runs one subcommand. Output goes to cfg.output_path (written only on
/// success) or to `out`; diagnostics go to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string text;
    int code = kSuccess;
    try {
        detail::check_config(cfg);
        switch (cfg.subcommand) {
        case Subcommand::Retract:
            text = cmd_retract(cfg, err);
            break;
        case Subcommand::Path:
            text = cmd_path(cfg, err);
            break;
        case Subcommand::Qr:
            text = cmd_qr(cfg, err);
            break;
        case Subcommand::Check: {
            auto outcome = cmd_check(cfg, err);
            text = std::move(outcome.text);
            code = outcome.all_passed ? kSuccess : kPropertyFailure;
            break;
        }
        case Subcommand::Selftest: {
            auto outcome = cmd_selftest(cfg);
            text = std::move(outcome.text);
            code = outcome.all_passed ? kSuccess : kPropertyFailure;
            break;
        }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }

    if (cfg.output_path) {
        std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot write " << *cfg.output_path << "\n";
            return kParseError;
        }
        file << text;
    } else {
        out << text;
    }
    if (code == kPropertyFailure) {
        err << "property check failed\n";
    }
    return code;
}

} // namespace stiefel::cli

#endif // STIEFEL_TOOLS_CLI_HPP
