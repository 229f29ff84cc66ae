#include "cactus/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "cactus/boltzmann.hpp"
#include "cactus/brownian.hpp"
#include "cactus/cactus_tree.hpp"
#include "cactus/errors.hpp"
#include "cactus/stats.hpp"

namespace cactus {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string short_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

template <class T>
std::string join(const std::vector<T>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    return os.str();
}

}  // namespace

Config Config::parse(std::istream& in) {
    Config c;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
        if (key.empty()) throw InputError("config line " + std::to_string(line_no) + ": empty key");
        if (c.has(key)) throw InputError("config line " + std::to_string(line_no) + ": duplicate key " + key);
        c.set(key, value);
    }
    return c;
}

Config Config::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

namespace {

template <class T>
T parse_value(const std::string& key, const std::string& text) {
    std::istringstream is(text);
    T v{};
    std::string rest;
    if (!(is >> v) || (is >> rest)) throw InputError("config key " + key + ": cannot parse `" + text + "`");
    return v;
}

}  // namespace

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& text = values_.at(key);
    if (text.empty() || text[0] == '-') throw InputError("config key " + key + ": expected an unsigned integer");
    return parse_value<std::uint64_t>(key, text);
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? parse_value<int>(key, values_.at(key)) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? parse_value<double>(key, values_.at(key)) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = values_.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InputError("config key " + key + ": expected true or false");
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(values_.at(key))) out.push_back(parse_value<double>(key, item));
    if (out.empty()) throw InputError("config key " + key + ": empty list");
    return out;
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& fallback) const {
    if (!has(key)) return fallback;
    std::vector<int> out;
    for (const auto& item : split_list(values_.at(key))) out.push_back(parse_value<int>(key, item));
    if (out.empty()) throw InputError("config key " + key + ": empty list");
    return out;
}

void Config::require_known(const std::vector<std::string>& known) const {
    for (const auto& [k, v] : values_)
        if (std::find(known.begin(), known.end(), k) == known.end()) throw InputError("unknown config key " + k);
}

const StatRow& StatReport::row(const std::string& name) const {
    for (const auto& r : rows)
        if (r.name == name) return r;
    throw InputError("report has no row " + name);
}

void write_csv(std::ostream& out, const StatReport& r) {
    out << "name,estimate,std_error,reference,provenance,tolerance\n";
    for (const auto& row : r.rows)
        out << row.name << ',' << format_number(row.estimate) << ',' << format_number(row.std_error) << ','
            << format_number(row.reference) << ',' << row.provenance << ',' << format_number(row.tolerance) << '\n';
}

void write_json(std::ostream& out, const StatReport& r) {
    using nlohmann::ordered_json;
    auto num = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
    ordered_json j;
    j["experiment"] = r.experiment;
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"name", row.name},
                        {"estimate", num(row.estimate)},
                        {"std_error", num(row.std_error)},
                        {"reference", num(row.reference)},
                        {"provenance", row.provenance},
                        {"tolerance", num(row.tolerance)}});
    j["rows"] = rows;
    out << j.dump(2) << '\n';
}

void write_samples_csv(std::ostream& out, const StatReport& r) {
    out << "statistic,index,value\n";
    for (const auto& [name, xs] : r.samples)
        for (std::size_t i = 0; i < xs.size(); ++i) out << name << ',' << i << ',' << format_number(xs[i]) << '\n';
}

namespace {

// Keys every experiment accepts.
const std::vector<std::string> kCommonKeys = {"seed", "replicas", "workers", "dump_samples"};

std::vector<std::string> with_common(std::vector<std::string> keys) {
    keys.insert(keys.end(), kCommonKeys.begin(), kCommonKeys.end());
    return keys;
}

LabelMode parse_label_mode(const std::string& s) {
    if (s == "bridge") return LabelMode::bridge;
    if (s == "vertex") return LabelMode::vertex;
    throw InputError("label_mode must be vertex or bridge");
}

struct Common {
    std::uint64_t seed;
    int replicas;
    int workers;
    bool dump;
};

Common read_common(const Config& cfg, int default_replicas) {
    Common c{cfg.get_u64("seed", 1), cfg.get_int("replicas", default_replicas), cfg.get_int("workers", 1),
             cfg.get_bool("dump_samples", false)};
    if (c.replicas < 1) throw InputError("replicas must be positive");
    if (c.workers < 1) throw InputError("workers must be positive");
    return c;
}

void echo_common(StatReport& r, const Common& c) {
    r.config.emplace_back("seed", std::to_string(c.seed));
    r.config.emplace_back("replicas", std::to_string(c.replicas));
    r.config.emplace_back("dump_samples", c.dump ? "true" : "false");
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t j) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[j]);
    return out;
}

std::vector<double> checked_radii(std::vector<double> deltas) {
    if (!std::is_sorted(deltas.begin(), deltas.end()) || deltas.front() < 0)
        throw InputError("deltas must be nonnegative and increasing");
    return deltas;
}

}  // namespace

StatReport volume_growth(const Config& cfg) {
    cfg.require_known(with_common({"tree_size", "deltas", "points_per_tree", "label_mode", "estimator", "pieces",
                                   "quadrature_panels", "relative_tolerance", "small_delta_tolerance"}));
    const auto common = read_common(cfg, 10000);
    const int n_edges = cfg.get_int("tree_size", 100000);
    const auto deltas = checked_radii(cfg.get_doubles("deltas", {0.05, 0.1, 0.2}));
    const int points = cfg.get_int("points_per_tree", 16);
    const auto mode_name = cfg.get_string("label_mode", "bridge");
    const auto mode = parse_label_mode(mode_name);
    const auto estimator = cfg.get_string("estimator", "vertex");
    const int pieces = cfg.get_int("pieces", 4);
    const int panels = cfg.get_int("quadrature_panels", 64);
    const double rel_tol = cfg.get_double("relative_tolerance", 0.05);
    const double small_tol = cfg.get_double("small_delta_tolerance", 0.10);
    if (estimator != "vertex" && estimator != "continuum") throw InputError("estimator must be vertex or continuum");
    if (points < 1 || n_edges < 1) throw InputError("tree_size and points_per_tree must be positive");

    StatReport rep;
    rep.experiment = "volume-growth";
    echo_common(rep, common);
    rep.config.emplace_back("tree_size", std::to_string(n_edges));
    rep.config.emplace_back("deltas", join(deltas));
    rep.config.emplace_back("points_per_tree", std::to_string(points));
    rep.config.emplace_back("label_mode", mode_name);
    rep.config.emplace_back("estimator", estimator);
    rep.config.emplace_back("pieces", std::to_string(pieces));
    rep.config.emplace_back("quadrature_panels", std::to_string(panels));
    rep.config.emplace_back("relative_tolerance", short_number(rel_tol));
    rep.config.emplace_back("small_delta_tolerance", short_number(small_tol));

    // Per tree: mean ball mass over `points` independent mass points, which
    // has the same expectation as the indicator of d(V, V') <= delta. The
    // vertex estimator conditions on V' != V, as the limit points are distinct.
    std::function<std::vector<double>(int, Rng&)> job = [&](int, Rng& rng) {
        const auto t = sample_labeled_tree(n_edges, rng, mode);
        std::vector<double> acc(deltas.size(), 0.0);
        for (int k = 0; k < points; ++k) {
            std::vector<double> m;
            if (estimator == "vertex") {
                const int c = sample_mass_vertex(t, rng);
                m = ball_masses(t, c, deltas);
                const double own = (t.children(c).size() + (c > 0 ? 1.0 : 0.0)) / (2.0 * t.edges());
                for (double& x : m) x = (x - own) / (1 - own);
            } else {
                m = continuum_ball_masses(t, rng, deltas, pieces);
            }
            for (std::size_t i = 0; i < deltas.size(); ++i) acc[i] += m[i] / points;
        }
        return acc;
    };
    const auto per_tree = run_replicas(common.seed, common.replicas, common.workers, job);

    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const auto xs = column(per_tree, i);
        const std::string tag = "[" + short_number(deltas[i]) + "]";
        rep.rows.push_back({"prob_within" + tag, mean(xs), standard_error(xs),
                            volume_growth_reference(deltas[i], panels), "quadrature of the two-point integral",
                            rel_tol});
        if (common.dump) rep.samples["prob_within" + tag] = xs;
    }
    const std::size_t first = std::find_if(deltas.begin(), deltas.end(), [](double d) { return d > 0; }) - deltas.begin();
    if (first < deltas.size()) {
        const auto xs = column(per_tree, first);
        const double d = deltas[first];
        rep.rows.push_back({"small_delta_law[" + short_number(d) + "]", mean(xs), standard_error(xs),
                            volume_growth_constant() * d * d * d, "leading cubic law", small_tol});
    }
    rep.rows.push_back({"cubic_constant", volume_growth_constant(), std::nan(""), std::nan(""),
                        "closed form 2^(5/4) Gamma(1/4)/(3 sqrt(pi))", std::nan("")});
    return rep;
}

StatReport ball_exponent(const Config& cfg) {
    cfg.require_known(with_common({"tree_size", "deltas", "points_per_tree", "label_mode"}));
    const auto common = read_common(cfg, 200);
    const int n_edges = cfg.get_int("tree_size", 100000);
    const auto deltas = checked_radii(cfg.get_doubles("deltas", {0.02, 0.03, 0.05, 0.08, 0.12, 0.2, 0.3}));
    const int points = cfg.get_int("points_per_tree", 8);
    const auto mode_name = cfg.get_string("label_mode", "bridge");
    const auto mode = parse_label_mode(mode_name);
    if (points < 1 || n_edges < 1) throw InputError("tree_size and points_per_tree must be positive");

    StatReport rep;
    rep.experiment = "ball-exponent";
    echo_common(rep, common);
    rep.config.emplace_back("tree_size", std::to_string(n_edges));
    rep.config.emplace_back("deltas", join(deltas));
    rep.config.emplace_back("points_per_tree", std::to_string(points));
    rep.config.emplace_back("label_mode", mode_name);

    // One row per ball: the masses for every radius.
    std::function<std::vector<std::vector<double>>(int, Rng&)> job = [&](int, Rng& rng) {
        const auto t = sample_labeled_tree(n_edges, rng, mode);
        std::vector<std::vector<double>> balls;
        for (int k = 0; k < points; ++k) balls.push_back(ball_masses(t, sample_mass_vertex(t, rng), deltas));
        return balls;
    };
    std::vector<std::vector<double>> balls;
    for (auto& per_tree : run_replicas(common.seed, common.replicas, common.workers, job))
        for (auto& b : per_tree) balls.push_back(std::move(b));

    std::vector<double> means, medians;
    int monotone = 0;
    for (const auto& b : balls) monotone += std::is_sorted(b.begin(), b.end());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const auto xs = column(balls, i);
        means.push_back(mean(xs));
        medians.push_back(median(xs));
        const std::string tag = "[" + short_number(deltas[i]) + "]";
        rep.rows.push_back({"mean_ball" + tag, means.back(), standard_error(xs), std::nan(""), "", std::nan("")});
        rep.rows.push_back({"median_ball" + tag, medians.back(), std::nan(""), std::nan(""), "", std::nan("")});
        if (common.dump) rep.samples["ball" + tag] = xs;
    }
    rep.rows.push_back({"slope_mean", log_log_slope(deltas, means), std::nan(""), 3.0, "cubic mean volume growth",
                        std::nan("")});
    rep.rows.push_back({"slope_median", log_log_slope(deltas, medians), std::nan(""), 4.0,
                        "almost sure exponent (exploratory)", std::nan("")});
    rep.rows.push_back({"monotone_fraction", static_cast<double>(monotone) / balls.size(), std::nan(""), 1.0,
                        "nested balls", std::nan("")});
    return rep;
}

StatReport separating_cycle(const Config& cfg) {
    cfg.require_known(with_common({"tree_size", "label_mode", "ks_threshold", "cross_threshold"}));
    const auto common = read_common(cfg, 10000);
    const int n_edges = cfg.get_int("tree_size", 10000);
    const auto mode_name = cfg.get_string("label_mode", "bridge");
    const auto mode = parse_label_mode(mode_name);
    const double ks_tol = cfg.get_double("ks_threshold", 0.03);
    const double cross_tol = cfg.get_double("cross_threshold", 0.03);

    StatReport rep;
    rep.experiment = "separating-cycle";
    echo_common(rep, common);
    rep.config.emplace_back("tree_size", std::to_string(n_edges));
    rep.config.emplace_back("label_mode", mode_name);
    rep.config.emplace_back("ks_threshold", short_number(ks_tol));
    rep.config.emplace_back("cross_threshold", short_number(cross_tol));

    std::function<std::vector<double>(int, Rng&)> job = [&](int, Rng& rng) {
        const auto t = sample_labeled_tree(n_edges, rng, mode);
        const double split = separating_split(t, rng).vol1;
        return std::vector<double>{split, arc_sine_split_oracle(t, rng)};
    };
    const auto per_tree = run_replicas(common.seed, common.replicas, common.workers, job);
    const auto vol1 = column(per_tree, 0), arc = column(per_tree, 1);

    rep.rows.push_back({"ks_split_vs_beta", ks_vs_cdf(vol1, beta_quarter_cdf), std::nan(""), 0.0,
                        "Beta(1/4 1/4) CDF by quadrature", ks_tol});
    rep.rows.push_back({"mean_split", mean(vol1), standard_error(vol1), 0.5, "exchangeability of the two points",
                        4.0});
    rep.rows.push_back({"ks_arc_sine_vs_split", ks_two_sample(arc, vol1), std::nan(""), 0.0,
                        "arc-sine excursion construction", cross_tol});
    rep.rows.push_back({"ks_arc_sine_vs_beta", ks_vs_cdf(arc, beta_quarter_cdf), std::nan(""), 0.0,
                        "Beta(1/4 1/4) CDF by quadrature", std::nan("")});
    rep.rows.push_back({"beta_normalizer", beta_quarter_normalizer(), std::nan(""), std::nan(""),
                        "Gamma(1/2)/Gamma(1/4)^2", std::nan("")});
    if (common.dump) {
        rep.samples["split"] = vol1;
        rep.samples["arc_sine"] = arc;
    }
    return rep;
}

StatReport cactus_convergence(const Config& cfg) {
    cfg.require_known(with_common({"sizes", "face_degree", "weights_file", "scaling", "variant", "sampler",
                                   "reference_tree_size", "reference_replicas", "ks_threshold", "fitted_threshold"}));
    const auto common = read_common(cfg, 4000);
    const auto sizes = cfg.get_ints("sizes", {1000, 4000});
    const auto weights_file = cfg.get_string("weights_file", "");
    const int face_degree = cfg.get_int("face_degree", 4);
    const auto variant_name = cfg.get_string("variant", "pos");
    const Variant variant = parse_variant(variant_name);
    const auto sampler_name = cfg.get_string("sampler", "cyclic");
    const int ref_edges = cfg.get_int("reference_tree_size", 100000);
    const int ref_count = cfg.get_int("reference_replicas", 10000);
    const double ks_tol = cfg.get_double("ks_threshold", 0.05);
    const double fit_tol = cfg.get_double("fitted_threshold", 0.07);
    if (sampler_name != "cyclic" && sampler_name != "rejection") throw InputError("sampler must be cyclic or rejection");
    if (ref_count < 1 || ref_edges < 4) throw InputError("reference sizes must be positive");

    WeightSeq q;
    if (!weights_file.empty()) {
        std::ifstream in(weights_file);
        if (!in) throw InputError("cannot open weights file " + weights_file);
        q = read_weights(in);
    } else {
        q = WeightSeq::single(face_degree);
    }
    // Single even face degree 2p: the closed-form angulation constant applies.
    const bool single_degree = weights_file.empty();
    const auto scaling = cfg.get_string("scaling", single_degree && face_degree % 2 == 0 ? "angulation" : "fitted");
    if (scaling != "angulation" && scaling != "fitted") throw InputError("scaling must be angulation or fitted");
    if (scaling == "angulation" && !(single_degree && face_degree % 2 == 0 && face_degree >= 4))
        throw InputError("angulation scaling needs a single even face degree >= 4");
    const int half_degree = face_degree / 2;

    StatReport rep;
    rep.experiment = "convergence";
    echo_common(rep, common);
    rep.config.emplace_back("sizes", join(sizes));
    if (single_degree)
        rep.config.emplace_back("face_degree", std::to_string(face_degree));
    else
        rep.config.emplace_back("weights_file", weights_file);
    rep.config.emplace_back("scaling", scaling);
    rep.config.emplace_back("variant", variant_name);
    rep.config.emplace_back("sampler", sampler_name);
    rep.config.emplace_back("reference_tree_size", std::to_string(ref_edges));
    rep.config.emplace_back("reference_replicas", std::to_string(ref_count));
    rep.config.emplace_back("ks_threshold", short_number(ks_tol));
    rep.config.emplace_back("fitted_threshold", short_number(fit_tol));

    // Brownian reference: distance of a mass point to the label minimum, and
    // d_KAC between two independent mass points. Stream 0 of the seed.
    std::function<std::vector<double>(int, Rng&)> ref_job = [&](int, Rng& rng) {
        const auto t = sample_labeled_tree(ref_edges, rng, LabelMode::bridge);
        const int v = sample_mass_vertex(t, rng);
        const int a = sample_mass_vertex(t, rng), b = sample_mass_vertex(t, rng);
        return std::vector<double>{distance_to_min(t, v), kac_distance(t, a, b)};
    };
    const auto ref = run_replicas(derive_seed(common.seed, 0), ref_count, common.workers, ref_job);
    const auto ref_one = column(ref, 0), ref_two = column(ref, 1);

    const BoltzmannSampler sampler(q);
    ConditionedOptions opts;
    opts.method = sampler_name == "cyclic" ? ConditioningMethod::cyclic : ConditioningMethod::rejection;

    std::vector<double> ks_one, ks_two;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        const int n = sizes[j];
        // Per map: one-point distance, two-point cactus distance, face count,
        // attempts, and whether the cactus height matched the graph distance.
        std::function<std::vector<double>(int, Rng&)> job = [&](int, Rng& rng) {
            const auto s = sampler.sample(n, variant, rng, opts);
            const auto g = s.map.underlying_graph();
            const auto dist = graph_distances(g, g.root());
            const auto ct = build_cactus(g);
            const int V = g.size();
            const int v = static_cast<int>(rng.below(V));
            const int a = static_cast<int>(rng.below(V)), b = static_cast<int>(rng.below(V));
            const double identity = ct.height_of(v) == dist[v] ? 1.0 : 0.0;
            return std::vector<double>{static_cast<double>(dist[v]), static_cast<double>(cactus_distance(ct, a, b)),
                                       static_cast<double>(s.map.face_count()), static_cast<double>(s.attempts),
                                       identity};
        };
        const auto maps = run_replicas(derive_seed(common.seed, 1000 + j), common.replicas, common.workers, job);
        auto one = column(maps, 0), two = column(maps, 1);
        const auto face_counts = column(maps, 2), attempts = column(maps, 3), identity = column(maps, 4);
        const std::string tag = "[" + std::to_string(n) + "]";

        double factor = 0;
        std::string provenance;
        if (scaling == "angulation") {
            // Every map has the same face count (n - 2)/(p - 1).
            const double faces = face_counts.front();
            factor = std::pow(9.0 / (4.0 * half_degree * (half_degree - 1)), 0.25) * std::pow(faces, -0.25);
            provenance = "angulation constant (9/(4p(p-1)))^(1/4)";
        } else {
            factor = median(ref_one) / median(one);
            provenance = "median fit on the one-point statistic";
        }
        for (auto& x : one) x *= factor;
        for (auto& x : two) x *= factor;
        const double k1 = ks_two_sample(one, ref_one), k2 = ks_two_sample(two, ref_two);
        ks_one.push_back(k1);
        ks_two.push_back(k2);
        const bool last = j + 1 == sizes.size();
        const double scale_constant = factor * std::pow(static_cast<double>(n), 0.25);
        rep.rows.push_back({"scale_constant" + tag, scale_constant, std::nan(""), std::nan(""), provenance, std::nan("")});
        rep.rows.push_back({"ks_one_point" + tag, k1, std::nan(""), 0.0, "Brownian reference",
                            scaling == "angulation" && last ? ks_tol : std::nan("")});
        rep.rows.push_back({"ks_two_point" + tag, k2, std::nan(""), 0.0, "Brownian reference",
                            scaling == "fitted" && last ? fit_tol : std::nan("")});
        rep.rows.push_back({"median_one_point" + tag, median(one), std::nan(""), median(ref_one), "Brownian reference",
                            std::nan("")});
        rep.rows.push_back({"median_two_point" + tag, median(two), std::nan(""), median(ref_two), "Brownian reference",
                            std::nan("")});
        rep.rows.push_back({"mean_attempts" + tag, mean(attempts), standard_error(attempts), std::nan(""), "",
                            std::nan("")});
        rep.rows.push_back({"height_identity" + tag, mean(identity), std::nan(""), 1.0,
                            "cactus height equals graph distance", std::nan("")});
        if (common.dump) {
            rep.samples["one_point" + tag] = one;
            rep.samples["two_point" + tag] = two;
        }
    }
    if (common.dump) {
        rep.samples["reference_one_point"] = ref_one;
        rep.samples["reference_two_point"] = ref_two;
    }
    auto decreasing = [](const std::vector<double>& xs) {
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] < xs[i - 1])) return 0.0;
        return 1.0;
    };
    rep.rows.push_back({"one_point_decreasing", decreasing(ks_one), std::nan(""), 1.0, "trend in n", std::nan("")});
    rep.rows.push_back({"two_point_decreasing", decreasing(ks_two), std::nan(""), 1.0, "trend in n", std::nan("")});
    return rep;
}

StatReport run_experiment(const std::string& name, const Config& cfg) {
    if (name == "volume-growth") return volume_growth(cfg);
    if (name == "ball-exponent") return ball_exponent(cfg);
    if (name == "separating-cycle") return separating_cycle(cfg);
    if (name == "convergence") return cactus_convergence(cfg);
    throw InputError("unknown experiment " + name);
}

}  // namespace cactus
