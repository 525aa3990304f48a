#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

#include "hdtk/dimension.hpp"
#include "hdtk/format.hpp"
#include "hdtk/quasi_iso.hpp"

namespace hdtk::cli {

namespace {

using Json = nlohmann::ordered_json;

struct NotAvailable {};
using Cell = std::variant<NotAvailable, std::int64_t, double, std::string, Json>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct RunConfig {
    std::string family = "z2";
    int d = 0;
    std::string radii;
    std::string window_radii;
    std::string edge;
    std::string center;
    std::string maps = "all";
    std::string input;
    std::string window_out;
    int factor = 4;
    int max_score_radius = 0;
    double tol = kDefaultTol;
    std::size_t jobs = 1;
    std::size_t max_vertices = WindowLimits{}.max_vertices;
    std::string format = "csv";
    std::string out;

    ScoreOptions score_options() const {
        ScoreOptions o;
        o.tol = tol;
        o.jobs = jobs;
        o.limits.max_vertices = max_vertices;
        return o;
    }
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') {
            q += '"';
        }
        q += c;
    }
    return q + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out << (i ? "," : "") << t.columns[i];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out << ',';
            }
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, NotAvailable>) {
                        out << "NA";
                    } else if constexpr (std::is_same_v<T, std::int64_t>) {
                        out << v;
                    } else if constexpr (std::is_same_v<T, double>) {
                        out << format_double(v);
                    } else if constexpr (std::is_same_v<T, std::string>) {
                        out << csv_field(v);
                    } else {
                        out << csv_field(v.dump());
                    }
                },
                row[i]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& t) {
    Json doc;
    doc["table"] = t.name;
    doc["columns"] = t.columns;
    doc["rows"] = Json::array();
    for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, NotAvailable>) {
                        obj[t.columns[i]] = nullptr;
                    } else if constexpr (std::is_same_v<T, double>) {
                        // JSON has no inf/nan.
                        obj[t.columns[i]] = std::isfinite(v) ? Json(v) : Json(format_double(v));
                    } else {
                        obj[t.columns[i]] = v;
                    }
                },
                row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

std::vector<int> parse_radii(const std::string& text, const char* flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    auto to_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != s.size()) {
            throw ConfigError(std::string(flag) + ": cannot parse '" + s + "'");
        }
        return v;
    };
    while (std::getline(ss, part, ',')) {
        if (auto dots = part.find(".."); dots != std::string::npos) {
            const int lo = to_int(part.substr(0, dots));
            const int hi = to_int(part.substr(dots + 2));
            if (hi < lo) {
                throw ConfigError(std::string(flag) + ": empty range '" + part + "'");
            }
            for (int r = lo; r <= hi; ++r) {
                out.push_back(r);
            }
        } else {
            out.push_back(to_int(part));
        }
    }
    if (out.empty()) {
        throw ConfigError(std::string(flag) + " is required");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] < 1) {
            throw ConfigError(std::string(flag) + ": radii must be at least 1");
        }
        if (i > 0 && out[i] <= out[i - 1]) {
            throw ConfigError(std::string(flag) + ": radii must be strictly increasing");
        }
    }
    return out;
}

VertexId parse_center(const GraphFamily& family, const std::string& text) {
    return text.empty() ? family.origin() : family.parse(text);
}

OrientedEdge parse_edge(const GraphFamily& family, const std::string& text) {
    if (text.empty()) {
        return {family.origin(), family.neighbors(family.origin()).front()};
    }
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ConfigError("--edge expects 'tail,head'");
    }
    OrientedEdge e{family.parse(text.substr(0, comma)), family.parse(text.substr(comma + 1))};
    if (!family.adjacent(e.tail, e.head)) {
        throw MissingEdge("--edge is not an edge of " + family.name());
    }
    return e;
}

Table run_scores(const RunConfig& cfg) {
    const auto family = parse_family_spec(cfg.family, cfg.d);
    const auto radii = parse_radii(cfg.radii, "--radii");
    const auto e = parse_edge(family, cfg.edge);
    const auto report = score_report(family, e, radii, cfg.score_options());
    Table t{"scores", {"family", "edge_tail", "edge_head", "R", "star", "diamond", "hd", "cg_iters", "residual"}, {}};
    for (const auto& row : report.rows) {
        t.rows.push_back({family.name(), family.format(e.tail), family.format(e.head),
                          static_cast<std::int64_t>(row.radius), row.star, row.diamond, row.hd,
                          static_cast<std::int64_t>(row.cg_iterations), row.residual});
    }
    return t;
}

Table run_folner(const RunConfig& cfg) {
    const auto family = parse_family_spec(cfg.family, cfg.d);
    const auto radii = parse_radii(cfg.radii, "--radii");
    const auto center = parse_center(family, cfg.center);
    WindowLimits limits;
    limits.max_vertices = cfg.max_vertices;
    Table t{"folner", {"family", "radius", "V", "E", "sigma", "ratio_v", "ratio_e"}, {}};
    for (const auto& row : folner_profile(family, center, radii, limits)) {
        t.rows.push_back({family.name(), static_cast<std::int64_t>(row.radius),
                          static_cast<std::int64_t>(row.num_vertices), static_cast<std::int64_t>(row.num_edges),
                          static_cast<std::int64_t>(row.sigma_size), row.ratio_v, row.ratio_e});
    }
    return t;
}

Table run_corollary4(const RunConfig& cfg) {
    const auto family = parse_family_spec(cfg.family, cfg.d);
    const auto radii = parse_radii(cfg.window_radii, "--window-radii");
    if (cfg.factor < 1) {
        throw ConfigError("--factor must be at least 1");
    }
    const auto center = parse_center(family, cfg.center);
    Table t{"corollary4", {"family", "window_radius", "score_radius", "hd_dim_estimate", "sigma_over_E"}, {}};
    for (const auto& row : corollary4_table(family, center, radii, cfg.factor, cfg.score_options(), cfg.max_score_radius)) {
        t.rows.push_back({family.name(), static_cast<std::int64_t>(row.window_radius),
                          static_cast<std::int64_t>(row.score_radius), row.hd_dim_estimate, row.sigma_over_e});
    }
    return t;
}

// Deterministic uniform doubles in [-1, 1) independent of the standard
// library's distribution implementations.
class TestFunctions {
public:
    explicit TestFunctions(std::uint64_t seed) : rng_(seed) {}

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-52 - 1.0; }

    std::vector<VertexFunction> make(const WindowPtr& w, const VertexId& bump_at) {
        std::vector<VertexFunction> out;
        for (int k = 0; k < 4; ++k) {
            out.push_back(VertexFunction::from(w, [&](const VertexId&) { return uniform(); }));
        }
        out.push_back(VertexFunction::from(w, [](const VertexId& x) { return static_cast<double>(x[0]); }));
        out.push_back(VertexFunction::from(w, [&](const VertexId& x) { return x == bump_at ? 1.0 : 0.0; }));
        return out;
    }

private:
    std::mt19937_64 rng_;
};

std::vector<QuasiMap> select_maps(const RunConfig& cfg) {
    const auto family = parse_family_spec(cfg.family, cfg.d);
    const bool lattice = family.name().starts_with("lattice");
    const bool two_d = family.name() == "lattice2";
    std::vector<std::string> names;
    if (cfg.maps == "all") {
        names = {"identity"};
        if (lattice || family.name() == "diag_lattice") {
            names.push_back("translation");
        }
        if (lattice) {
            names.push_back("coarsening");
            names.push_back("parity_rounding");
        }
        if (two_d) {
            names.push_back("lattice_to_diag");
            names.push_back("diag_to_lattice");
        }
    } else {
        std::stringstream ss(cfg.maps);
        std::string part;
        while (std::getline(ss, part, ',')) {
            names.push_back(part);
        }
    }
    std::vector<QuasiMap> maps;
    for (const auto& name : names) {
        if (name == "identity") {
            maps.push_back(identity_map(family));
        } else if (name == "translation") {
            std::vector<int> offset(family.origin().size(), 0);
            offset[0] = 2;
            if (offset.size() > 1) {
                offset[1] = 1;
            }
            maps.push_back(translation_map(family, offset));
        } else if (name == "coarsening") {
            maps.push_back(coarsening_map(family));
        } else if (name == "parity_rounding") {
            maps.push_back(parity_rounding_map(family));
        } else if (name == "lattice_to_diag") {
            maps.push_back(lattice_to_diag_map());
        } else if (name == "diag_to_lattice") {
            maps.push_back(diag_to_lattice_map());
        } else {
            throw ConfigError("unknown map '" + name + "'");
        }
    }
    return maps;
}

Table run_qicheck(const RunConfig& cfg) {
    const auto maps = select_maps(cfg);
    const auto radii = parse_radii(cfg.window_radii.empty() ? std::string("2,4") : cfg.window_radii,
                                   "--window-radii");
    WindowLimits limits;
    limits.max_vertices = cfg.max_vertices;
    Table t{"qicheck",
            {"map_name", "window_radius", "k_est", "density_gap", "wobble", "lemma5_ratio", "lemma5_bound",
             "lemma6_ratio", "lemma6_bound"},
            {}};
    std::uint64_t seed = 20240917;
    for (const auto& f : maps) {
        for (int r : radii) {
            const auto window = ball(f.source(), f.source().origin(), r, limits);
            const int k = static_cast<int>(std::ceil(f.claimed_distortion()));
            const int cutoff = k * (2 * r + 2) + 4;
            const auto dist = distortion_estimate(f, *window, cutoff);

            std::vector<VertexId> image;
            for (const auto& x : window->vertices()) {
                image.push_back(f(x));
            }
            const auto target_window =
                induced_window(f.target(), neighborhood(f.target(), image, k, limits), limits);
            TestFunctions tests(seed++);
            double l5 = 0.0;
            for (const auto& v : tests.make(target_window, f(f.source().origin()))) {
                l5 = std::max(l5, lemma5_check(f, v, window).ratio);
            }
            const double l5_bound = edge_path_multiplicity(f, *window, cutoff).energy_constant();

            Cell wobble = NotAvailable{}, l6 = NotAvailable{}, l6_bound = NotAvailable{};
            if (f.is_endomap()) {
                const int m = wobbling_displacement(f, *window, cutoff);
                wobble = static_cast<std::int64_t>(m);
                auto src = window->vertices();
                const auto enlarged = induced_window(
                    f.source(), neighborhood(f.source(), std::vector<VertexId>(src.begin(), src.end()), m, limits),
                    limits);
                double worst = 0.0;
                for (const auto& v : tests.make(enlarged, f.source().origin())) {
                    const auto res = lemma6_check(f, v, *window, cutoff);
                    if (res.energy > 0.0) {
                        worst = std::max(worst, res.diff_norm * res.diff_norm / res.energy);
                    }
                }
                l6 = worst;
                l6_bound = displacement_path_multiplicity(f, *window, cutoff).square_constant();
            }
            t.rows.push_back({f.name(), static_cast<std::int64_t>(r), dist.k_est,
                              static_cast<std::int64_t>(dist.density_gap), wobble, l5, l5_bound, l6, l6_bound});
        }
    }
    return t;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string part;
    while (std::getline(ss, part, ',')) {
        while (!part.empty() && (part.back() == '\r' || part.back() == ' ')) {
            part.pop_back();
        }
        out.push_back(part);
    }
    return out;
}

Table run_decompose(const RunConfig& cfg, bool family_given) {
    std::ifstream in(cfg.input);
    if (!in) {
        throw ConfigError("cannot read --in '" + cfg.input + "'");
    }
    struct Row {
        std::string tail, head;
        double value;
    };
    std::vector<Row> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto fields = split_csv_line(line);
        if (header) {
            header = false;
            if (fields.size() == 3 && fields[0] == "tail") {
                continue;
            }
        }
        if (fields.size() != 3) {
            throw ConfigError("expected 'tail,head,value' rows, got '" + line + "'");
        }
        double value = 0.0;
        try {
            value = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw ConfigError("bad value in row '" + line + "'");
        }
        rows.push_back({fields[0], fields[1], value});
    }
    if (rows.empty()) {
        throw ConfigError("--in has no edges");
    }

    std::optional<GraphFamily> family;
    if (family_given) {
        family = parse_family_spec(cfg.family, cfg.d);
    } else {
        std::vector<std::string> labels;
        std::map<std::string, std::size_t> index;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        auto id = [&](const std::string& s) {
            auto [it, inserted] = index.emplace(s, labels.size());
            if (inserted) {
                labels.push_back(s);
            }
            return it->second;
        };
        for (const auto& r : rows) {
            edges.emplace_back(id(r.tail), id(r.head));
        }
        family = make_finite_family("input", labels, edges);
    }
    std::vector<VertexId> vs;
    for (const auto& r : rows) {
        vs.push_back(family->parse(r.tail));
        vs.push_back(family->parse(r.head));
    }
    WindowLimits limits;
    limits.max_vertices = cfg.max_vertices;
    const auto window = induced_window(*family, vs, limits);
    EdgeFunction u(window);
    for (const auto& r : rows) {
        auto found = window->find_edge({family->parse(r.tail), family->parse(r.head)});
        if (!found) {
            throw MissingEdge("(" + r.tail + ", " + r.head + ") is not an edge");
        }
        u[found->first] += found->second * r.value;
    }
    if (!cfg.window_out.empty()) {
        std::ofstream wout(cfg.window_out);
        if (!wout) {
            throw ConfigError("cannot write '" + cfg.window_out + "'");
        }
        wout << window_to_json(*window, *family) << '\n';
    }
    const auto parts = hodge_decompose_finite(u, cfg.tol);
    Json solve = {{"iterations", parts.report.iterations},
                  {"residual", parts.report.relative_residual},
                  {"converged", parts.report.converged}};

    std::vector<std::size_t> order(window->num_edges());
    for (std::size_t k = 0; k < order.size(); ++k) {
        order[k] = k;
    }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        auto ea = window->canonical_edge(a), eb = window->canonical_edge(b);
        return ea.tail != eb.tail ? ea.tail < eb.tail : ea.head < eb.head;
    });
    Table t{"decompose", {"tail", "head", "value", "star", "diamond", "solve"}, {}};
    for (auto k : order) {
        const auto e = window->canonical_edge(k);
        t.rows.push_back({family->format(e.tail), family->format(e.head), u[k], parts.star_part[k],
                          parts.diamond_part[k], solve});
    }
    return t;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Harmonic Dirichlet dimension toolkit", "hdtk"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family, "family: z<d>, lattice, tree<d>, tree, ladder, comb, diag");
        sub->add_option("--d", cfg.d, "dimension / degree for lattice and tree");
        sub->add_option("--tol", cfg.tol, "relative CG tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
        sub->add_option("--max-vertices", cfg.max_vertices, "window size cap");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "output file (default: standard output)");
    };

    auto* scores = app.add_subcommand("scores", "per-edge star/diamond/hd traces over a radius schedule");
    add_common(scores);
    scores->add_option("--radii", cfg.radii, "e.g. 2,4,8 or 1..8")->required();
    scores->add_option("--edge", cfg.edge, "tail,head (default: origin and its first neighbour)");

    auto* folner = app.add_subcommand("folner", "boundary-to-volume ratios of balls");
    add_common(folner);
    folner->add_option("--radii", cfg.radii)->required();
    folner->add_option("--center", cfg.center);

    auto* qicheck = app.add_subcommand("qicheck", "quasi-isometry checks over built-in maps");
    add_common(qicheck);
    qicheck->add_option("--map", cfg.maps, "comma list or 'all'");
    qicheck->add_option("--window-radii", cfg.window_radii);

    auto* cor4 = app.add_subcommand("cor4", "HD trace of growing balls");
    add_common(cor4);
    cor4->add_option("--window-radii", cfg.window_radii)->required();
    cor4->add_option("--factor", cfg.factor, "score radius / window radius");
    cor4->add_option("--center", cfg.center);
    cor4->add_option("--max-score-radius", cfg.max_score_radius, "cap on factor * window radius (0: none)")
        ->check(CLI::NonNegativeNumber);

    auto* decompose = app.add_subcommand("decompose", "finite Hodge decomposition of an edge function CSV");
    add_common(decompose);
    decompose->add_option("--in", cfg.input, "CSV with tail,head,value rows")->required();
    decompose->add_option("--window-out", cfg.window_out, "also write the window as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        Table table;
        if (scores->parsed()) {
            table = run_scores(cfg);
        } else if (folner->parsed()) {
            table = run_folner(cfg);
        } else if (qicheck->parsed()) {
            table = run_qicheck(cfg);
        } else if (cor4->parsed()) {
            table = run_corollary4(cfg);
        } else {
            table = run_decompose(cfg, decompose->count("--family") > 0);
        }

        std::ofstream file;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) {
                throw ConfigError("cannot write '" + cfg.out + "'");
            }
        }
        std::ostream& sink = cfg.out.empty() ? out : file;
        if (cfg.format == "json") {
            write_json(sink, table);
        } else {
            write_csv(sink, table);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

} // namespace hdtk::cli
