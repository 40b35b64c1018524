#pragma once

// Configuration-driven experiment runners behind the command-line tool.
//
// Exit codes: 0 when every check passes, 1 when a mathematical check fails,
// 2 for usage and configuration errors.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#if __has_include("json.hpp")
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "eqcoalg/approx.hpp"
#include "eqcoalg/error.hpp"
#include "eqcoalg/free_lift.hpp"
#include "eqcoalg/group.hpp"
#include "eqcoalg/linalg.hpp"
#include "eqcoalg/random.hpp"
#include "eqcoalg/representation.hpp"
#include "eqcoalg/set_coalgebra.hpp"
#include "eqcoalg/vect_coalgebra.hpp"

namespace eqcoalg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Pass threshold for every residual reported by `laws`.
inline constexpr double kLawTolerance = 1e-9;

class ConfigError : public Error {
public:
    using Error::Error;
};

struct GroupSpec {
    GroupKind kind = GroupKind::cyclic;
    std::size_t n = 2;
    std::string table_path;  // used when kind == table
};

enum class RepKind { permutation, regular, rotation2d, file };

struct RepSpec {
    RepKind kind = RepKind::permutation;
    std::string path;  // used when kind == file
};

struct ExperimentConfig {
    GroupSpec group;
    RepSpec rep_in;
    RepSpec rep_out;
    std::string target = "swap_poly";
    std::vector<Interval> box;  // empty, or a single interval broadcast to every coordinate
    std::size_t train_count = 2000;
    std::size_t test_count = 500;
    std::vector<std::size_t> widths{16, 64, 256};
    Activation activation = Activation::tanh;
    double lambda = 1e-8;
    std::uint64_t seed = 42;
    std::size_t law_samples = 20;
    std::optional<std::vector<std::vector<std::size_t>>> action;
};

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string resolve_path(const std::string& p, const std::filesystem::path& base) {
    const std::filesystem::path fp(p);
    if (fp.is_absolute() || base.empty()) return p;
    return (base / fp).string();
}

inline GroupSpec parse_group_string(std::string_view s, const std::filesystem::path& base) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw ConfigError("group spec '" + std::string(s) + "': expected kind:n or table:<path>");
    const std::string kind(s.substr(0, colon));
    const std::string arg(s.substr(colon + 1));
    GroupSpec g;
    if (kind == "table") {
        if (arg.empty()) throw ConfigError("group spec: empty table path");
        g.kind = GroupKind::table;
        g.table_path = resolve_path(arg, base);
        return g;
    }
    if (kind == "cyclic") g.kind = GroupKind::cyclic;
    else if (kind == "dihedral") g.kind = GroupKind::dihedral;
    else if (kind == "symmetric") g.kind = GroupKind::symmetric;
    else throw ConfigError("group spec: unknown kind '" + kind + "'");
    std::size_t n = 0;
    const auto r = std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (r.ec != std::errc{} || r.ptr != arg.data() + arg.size() || n == 0)
        throw ConfigError("group spec: n must be a positive integer");
    g.n = n;
    return g;
}

inline RepSpec parse_rep(const std::string& s, const std::filesystem::path& base) {
    if (s == "permutation") return {RepKind::permutation, {}};
    if (s == "regular") return {RepKind::regular, {}};
    if (s == "rotation2d") return {RepKind::rotation2d, {}};
    if (s.rfind("file:", 0) == 0 && s.size() > 5) return {RepKind::file, resolve_path(s.substr(5), base)};
    throw ConfigError("rep spec '" + s + "': expected permutation, regular, rotation2d or file:<path>");
}

template <class T>
T get_as(const nlohmann::json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

inline std::size_t get_count(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ConfigError(std::string("config key '") + key + "': expected a positive integer");
    return v.get<std::size_t>();
}

}  // namespace detail

/// Builds a config from JSON. Relative file paths are resolved against
/// `base_dir`. Unknown keys are rejected.
inline ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    static const std::vector<std::string> known{"group",     "rep_in",  "rep_out", "target", "box",
                                                "train_count", "test_count", "widths", "activation", "lambda",
                                                "seed",      "law_samples", "action"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("config: unknown key '" + key + "'");

    ExperimentConfig c;
    if (j.contains("group")) {
        const auto& g = j["group"];
        if (g.is_string()) {
            c.group = detail::parse_group_string(g.get<std::string>(), base_dir);
        } else if (g.is_object()) {
            if (g.contains("table")) {
                c.group.kind = GroupKind::table;
                c.group.table_path = detail::resolve_path(detail::get_as<std::string>(g, "table"), base_dir);
            } else {
                const auto kind = detail::get_as<std::string>(g, "kind");
                c.group = detail::parse_group_string(kind + ":" + std::to_string(detail::get_count(g, "n")), base_dir);
            }
        } else {
            throw ConfigError("config key 'group': expected an object or a string");
        }
    }
    if (j.contains("rep_in")) c.rep_in = detail::parse_rep(detail::get_as<std::string>(j, "rep_in"), base_dir);
    if (j.contains("rep_out")) c.rep_out = detail::parse_rep(detail::get_as<std::string>(j, "rep_out"), base_dir);
    else c.rep_out = c.rep_in;
    if (j.contains("target")) c.target = detail::get_as<std::string>(j, "target");
    if (j.contains("box")) {
        const auto& b = j["box"];
        auto as_interval = [](const nlohmann::json& p) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw ConfigError("config key 'box': intervals are [lower, upper] pairs");
            Interval iv{p[0].get<double>(), p[1].get<double>()};
            if (!(iv.lower <= iv.upper)) throw ConfigError("config key 'box': lower bound exceeds upper bound");
            return iv;
        };
        if (!b.is_array() || b.empty()) throw ConfigError("config key 'box': expected a non-empty array");
        if (b[0].is_number()) c.box = {as_interval(b)};
        else
            for (const auto& p : b) c.box.push_back(as_interval(p));
    }
    if (j.contains("train_count")) c.train_count = detail::get_count(j, "train_count");
    if (j.contains("test_count")) c.test_count = detail::get_count(j, "test_count");
    if (j.contains("law_samples")) c.law_samples = detail::get_count(j, "law_samples");
    if (j.contains("widths")) {
        const auto& w = j["widths"];
        if (!w.is_array() || w.empty()) throw ConfigError("config key 'widths': expected a non-empty array");
        c.widths.clear();
        for (const auto& x : w) {
            if (!x.is_number_integer() || x.get<long long>() < 1) throw ConfigError("config key 'widths': entries must be positive integers");
            c.widths.push_back(x.get<std::size_t>());
        }
    }
    if (j.contains("activation")) {
        const auto a = parse_activation(detail::get_as<std::string>(j, "activation"));
        if (!a) throw ConfigError("config key 'activation': expected tanh, relu or sigmoid");
        c.activation = *a;
    }
    if (j.contains("lambda")) {
        c.lambda = detail::get_as<double>(j, "lambda");
        if (!(c.lambda >= 0.0) || !std::isfinite(c.lambda)) throw ConfigError("config key 'lambda': must be >= 0");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw ConfigError("config key 'seed': expected an integer");
        c.seed = j["seed"].is_number_unsigned() ? j["seed"].get<std::uint64_t>()
                                                : static_cast<std::uint64_t>(j["seed"].get<std::int64_t>());
    }
    if (j.contains("action")) c.action = detail::get_as<std::vector<std::vector<std::size_t>>>(j, "action");
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
    return parse_config(j, std::filesystem::path(path).parent_path());
}

/// Applies a `--group` override of the form table:<path> or kind:n.
inline void override_group(ExperimentConfig& c, std::string_view spec) { c.group = detail::parse_group_string(spec, {}); }

inline GroupTable resolve_group(const GroupSpec& g) {
    try {
        if (g.kind == GroupKind::table) return load_group_table(g.table_path);
        return build_group(g.kind, g.n);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("group: ") + e.what());
    }
}

inline LinearRep resolve_rep(const RepSpec& r, const GroupTable& group) {
    try {
        switch (r.kind) {
            case RepKind::permutation: return permutation_rep(natural_action(group));
            case RepKind::regular: return regular_rep(group);
            case RepKind::rotation2d: return rotation2d_rep(group);
            case RepKind::file: return load_linear_rep(r.path, group);
        }
    } catch (const Error& e) {
        throw ConfigError(std::string("representation: ") + e.what());
    }
    throw ConfigError("representation: unknown kind");
}

/// Built-in targets:
///   swap_poly       (x, y) -> (x y + x, x y + y), equivariant under swapping;
///   perm_meanshift  x -> (x_i^2 + mean(x))_i, equivariant under permutations;
///   symmetrized:<h> Phi(h) for a built-in h, using the configured actions.
inline VectorFunction builtin_target(const std::string& name, const ActionCoalgebra& alpha, const ReynoldsAlgebra& gamma) {
    constexpr std::string_view prefix = "symmetrized:";
    if (name.rfind(prefix, 0) == 0) {
        return symmetrize(builtin_target(name.substr(prefix.size()), alpha, gamma), alpha, gamma);
    }
    if (name == "swap_poly") {
        if (alpha.dim() != 2 || gamma.dim() != 2) throw ConfigError("target swap_poly: needs 2-dimensional input and output");
        return [](const DenseVector& x) {
            const double xy = x[0] * x[1];
            return DenseVector{xy + x[0], xy + x[1]};
        };
    }
    if (name == "perm_meanshift") {
        if (alpha.dim() != gamma.dim()) throw ConfigError("target perm_meanshift: input and output dims must agree");
        return [](const DenseVector& x) {
            double mean = 0.0;
            for (double v : x) mean += v;
            mean /= static_cast<double>(x.dim());
            DenseVector y(x.dim());
            for (std::size_t i = 0; i < x.dim(); ++i) y[i] = x[i] * x[i] + mean;
            return y;
        };
    }
    throw ConfigError("target: unknown builtin '" + name + "'");
}

inline std::vector<Interval> resolve_box(const ExperimentConfig& c, std::size_t dim) {
    if (c.box.empty()) return std::vector<Interval>(dim, Interval{-1.0, 1.0});
    if (c.box.size() == 1) return std::vector<Interval>(dim, c.box.front());
    if (c.box.size() != dim) throw ConfigError("box: number of intervals != input dimension");
    return c.box;
}

namespace detail {

class CheckReport {
public:
    explicit CheckReport(std::ostream& out) : out_(out) {}

    void residual(const std::string& name, double value, double tol = kLawTolerance) {
        const bool ok = value <= tol;
        out_ << std::left << std::setw(44) << name << ' ' << format_double(value) << (ok ? "  ok" : "  FAIL") << '\n';
        ok_ = ok_ && ok;
    }

    template <class W>
    void verdict(const std::string& name, const Verdict<W>& v, auto&& describe) {
        out_ << std::left << std::setw(44) << name << ' ';
        if (v) {
            out_ << "holds  ok\n";
        } else {
            out_ << "violated at " << describe(*v.witness()) << "  FAIL\n";
            ok_ = false;
        }
    }

    void flag(const std::string& name, bool ok, const std::string& detail = {}) {
        out_ << std::left << std::setw(44) << name << ' ' << (ok ? "holds  ok" : "FAIL " + detail) << '\n';
        ok_ = ok_ && ok;
    }

    bool ok() const noexcept { return ok_; }

private:
    std::ostream& out_;
    bool ok_ = true;
};

inline std::string describe_point(const PointWitness& w) {
    return "(point " + std::to_string(w.point) + ", g " + std::to_string(w.g) + ")";
}

inline std::string describe_action(const ActionWitness& w) {
    if (w.law == ActionLaw::unit) return "(point " + std::to_string(w.point) + ", identity)";
    return "(point " + std::to_string(w.point) + ", g1 " + std::to_string(w.outer) + ", g2 " + std::to_string(w.inner) + ")";
}

inline DenseVector random_vector(Rng& rng, std::size_t dim) {
    DenseVector v(dim);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

inline BlockVector random_block_vector(Rng& rng, const GroupTable& group, std::size_t dim) {
    return BlockVector::tabulate(group, [&](Element) { return random_vector(rng, dim); });
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const Error& e) {
        err << "check failed: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

}  // namespace detail

/// Runs every law suite for the configured group and representations.
inline int run_laws(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const GroupTable group = resolve_group(config.group);
        const LinearRep rep_in = resolve_rep(config.rep_in, group);
        const LinearRep rep_out = resolve_rep(config.rep_out, group);
        Rng rng(derive_seed(config.seed, 0x6c617773));
        detail::CheckReport report(out);
        out << "group " << group.name() << ", order " << group.order() << '\n';

        report.residual("representation in: validate_rep", validate_rep(rep_in));
        report.residual("representation out: validate_rep", validate_rep(rep_out));

        const std::size_t k = config.law_samples;
        for (const std::size_t dim : {rep_in.dim(), rep_out.dim()}) {
            std::vector<BlockVector> blocks;
            for (std::size_t i = 0; i < k; ++i) blocks.push_back(detail::random_block_vector(rng, group, dim));
            report.residual("comonad laws, dim " + std::to_string(dim), check_comonad_laws(group, dim, blocks));
        }
        for (const auto* rep : {&rep_in, &rep_out}) {
            const std::string side = rep == &rep_in ? "in" : "out";
            const auto coalg = ActionCoalgebra::unchecked(*rep);
            const auto alg = ReynoldsAlgebra::unchecked(*rep);
            std::vector<DenseVector> xs;
            std::vector<BlockVector> phis;
            for (std::size_t i = 0; i < k; ++i) {
                xs.push_back(detail::random_vector(rng, rep->dim()));
                phis.push_back(detail::random_block_vector(rng, group, rep->dim()));
            }
            report.residual("comodule laws (" + side + ")", check_comodule_laws(coalg, xs));
            report.residual("left inverse (" + side + ")", check_left_inverse(coalg, alg, xs, phis));
        }

        const FiniteSetCoalgebra action = natural_action(group);
        report.verdict("set action laws", is_group_action(action), detail::describe_action);
        if (is_group_action(action)) {
            std::vector<std::size_t> id(action.carrier_size());
            for (std::size_t a = 0; a < id.size(); ++a) id[a] = a;
            report.verdict("identity is a homomorphism", is_homomorphism(id, action, action), detail::describe_point);
            bool orbits_ok = true;
            for (const auto& o : orbits(action)) orbits_ok = orbits_ok && static_cast<bool>(is_subuniverse(o, action));
            report.flag("orbits are subuniverses", orbits_ok);
            if (action.carrier_size() <= 12) {
                std::vector<Subset> brute;
                for (std::uint32_t mask = 0; mask < (1u << action.carrier_size()); ++mask) {
                    Subset s;
                    for (std::size_t a = 0; a < action.carrier_size(); ++a)
                        if (mask & (1u << a)) s.push_back(a);
                    if (is_subuniverse(s, action)) brute.push_back(std::move(s));
                }
                std::sort(brute.begin(), brute.end(), detail::subset_less);
                report.flag("subuniverses match brute force", brute == enumerate_subuniverses(action));
            }
        }
        report.verdict("lift: embedding equivariance", check_embedding_equivariance(action), detail::describe_point);
        report.verdict("lift: compatibility identity", check_compatibility_identity(action), detail::describe_point);

        out << (report.ok() ? "all checks passed\n" : "some checks FAILED\n");
        return report.ok() ? kExitOk : kExitCheckFailed;
    });
}

struct UatReportRow {
    std::size_t width = 0;
    double train_err_K = 0.0;
    double f_err_Khat = 0.0;
    double l_err_Khat = 0.0;
    double equiv_residual = 0.0;
    double transfer_ratio = 0.0;
    std::uint64_t seed = 0;
    double output_scale = 0.0;  // max ||l(x)|| on the test sample, not emitted
};

inline constexpr std::string_view kUatCsvHeader =
    "width,train_err_K,f_err_Khat,l_err_Khat,equiv_residual,transfer_ratio,seed";

inline std::string to_csv(const UatReportRow& r) {
    return std::to_string(r.width) + "," + format_double(r.train_err_K) + "," + format_double(r.f_err_Khat) + "," +
           format_double(r.l_err_Khat) + "," + format_double(r.equiv_residual) + "," + format_double(r.transfer_ratio) +
           "," + std::to_string(r.seed);
}

/// Fits f on K for each width, factors Phi(f) into a vector net l and
/// measures both against the target on the symmetrized held-out sample.
///
/// The transfer ratio is sup_Khat ||phi - l|| / sup_Ktest ||phi - f||, where
/// Ktest is the held-out sample before symmetrization.
inline std::vector<UatReportRow> uat_rows(const ExperimentConfig& config) {
    const GroupTable group = resolve_group(config.group);
    const LinearRep rep_in = resolve_rep(config.rep_in, group);
    const LinearRep rep_out = resolve_rep(config.rep_out, group);
    const ActionCoalgebra alpha(rep_in);
    const ReynoldsAlgebra gamma(rep_out);
    const VectorFunction target = builtin_target(config.target, alpha, gamma);
    const auto box = resolve_box(config, rep_in.dim());

    const CompactSample train = sample_box(box, config.train_count, derive_seed(config.seed, 0x747261696e));
    const CompactSample test = sample_box(box, config.test_count, derive_seed(config.seed, 0x74657374));
    const CompactSample test_hat = symmetrize_sample(test, rep_in);

    std::vector<UatReportRow> rows;
    for (const std::size_t width : config.widths) {
        const ShallowNet f = fit_random_features(target, train, width, config.activation, config.lambda,
                                                 derive_seed(config.seed, width));
        const VectorNet l = to_vector_net(f, alpha, gamma);
        auto ell = [&l](const DenseVector& x) { return eval_vector_net(l, x); };

        UatReportRow row;
        row.width = width;
        row.seed = config.seed;
        row.train_err_K = sup_distance(target, f, train.span());
        row.f_err_Khat = sup_distance(target, f, test_hat.span());
        row.l_err_Khat = sup_distance(target, ell, test_hat.span());
        row.equiv_residual = equivariance_residual(ell, rep_in, rep_out, test_hat);
        row.output_scale = max_output_norm(ell, test_hat);
        const double f_err_test = sup_distance(target, f, test.span());
        if (f_err_test > 0.0) row.transfer_ratio = row.l_err_Khat / f_err_test;
        else row.transfer_ratio = row.l_err_Khat == 0.0 ? 1.0 : std::numeric_limits<double>::max();
        rows.push_back(row);
    }
    return rows;
}

/// Writes the CSV report; exits 1 when some row is not equivariant to within
/// 1e-9 (1 + max output norm).
inline int run_uat(const ExperimentConfig& config, std::ostream& csv, std::ostream& err) {
    return detail::guarded(err, [&] {
        const auto rows = uat_rows(config);
        bool ok = true;
        csv << kUatCsvHeader << '\n';
        for (const auto& r : rows) {
            csv << to_csv(r) << '\n';
            if (r.equiv_residual > kLawTolerance * (1.0 + r.output_scale)) {
                err << "width " << r.width << ": equivariance residual " << format_double(r.equiv_residual)
                    << " exceeds tolerance\n";
                ok = false;
            }
        }
        return ok ? kExitOk : kExitCheckFailed;
    });
}

/// Lifts the configured action (or the group's natural action) to the free
/// vector space and checks the embedding and compatibility identities.
inline int run_lift_demo(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const GroupTable group = resolve_group(config.group);
        const FiniteSetCoalgebra c = config.action ? FiniteSetCoalgebra(group, *config.action) : natural_action(group);
        detail::CheckReport report(out);
        out << "group " << group.name() << " acting on " << c.carrier_size() << " points\n";
        const auto action_ok = is_group_action(c);
        report.verdict("action laws", action_ok, detail::describe_action);
        if (!action_ok) {
            err << "invalid action table: " << detail::describe_action(*action_ok.witness()) << '\n';
            return kExitCheckFailed;
        }
        const DenseMatrix lifted = lift_coalgebra(c);
        const std::size_t n = c.carrier_size();
        for (Element g = 0; g < group.order(); ++g) {
            out << "block " << g << ":\n";
            for (std::size_t r = 0; r < n; ++r) {
                out << "  ";
                for (std::size_t col = 0; col < n; ++col) out << (col ? " " : "") << lifted(g * n + r, col);
                out << '\n';
            }
        }
        report.verdict("embedding equivariance", check_embedding_equivariance(c), detail::describe_point);
        report.verdict("compatibility identity", check_compatibility_identity(c), detail::describe_point);
        return report.ok() ? kExitOk : kExitCheckFailed;
    });
}

}  // namespace eqcoalg
