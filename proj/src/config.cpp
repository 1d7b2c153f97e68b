#include "landau/config.hpp"

#include "landau/errors.hpp"
#include "landau/maxwellian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace landau {

namespace {

using nlohmann::json;

// Data is treated as zero below this fraction of its maximum.
constexpr double tail_fraction = 1e-14;

void only_keys(const json &obj, const std::string &where, std::initializer_list<const char *> allowed)
{
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!ok.count(it.key()))
            throw ConfigInvalid("unknown key '" + it.key() + "' in " + where);
}

const json &section(const json &root, const char *name)
{
    if (!root.contains(name) || !root.at(name).is_object())
        throw ConfigInvalid(std::string("missing section '") + name + "'");
    return root.at(name);
}

template <class T>
T required(const json &obj, const char *key, const std::string &where)
{
    if (!obj.contains(key))
        throw ConfigInvalid(std::string("missing key '") + key + "' in " + where);
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception &) {
        throw ConfigInvalid(std::string("key '") + key + "' in " + where + " has the wrong type");
    }
}

template <class T>
T optional(const json &obj, const char *key, T fallback, const std::string &where)
{
    if (!obj.contains(key))
        return fallback;
    return required<T>(obj, key, where);
}

std::array<double, 3> vec3(const json &obj, const char *key, const std::string &where)
{
    std::array<double, 3> out{};
    if (!obj.contains(key))
        return out;
    const auto values = required<std::vector<double>>(obj, key, where);
    if (values.size() > 3)
        throw ConfigInvalid(std::string("key '") + key + "' in " + where + " has more than 3 entries");
    std::copy(values.begin(), values.end(), out.begin());
    return out;
}

int line_of(const std::string &text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Bump bump_from(const json &j, const std::string &where)
{
    only_keys(j, where, {"x0", "u", "s_x", "s_v", "weight"});
    Bump b;
    b.x0 = vec3(j, "x0", where);
    b.u = vec3(j, "u", where);
    b.s_x = optional<double>(j, "s_x", 1.0, where);
    b.s_v = optional<double>(j, "s_v", 1.0, where);
    b.weight = optional<double>(j, "weight", 1.0, where);
    if (!(b.s_x > 0.0 && b.s_v > 0.0))
        throw ConfigInvalid(where + ": widths s_x and s_v must be positive");
    return b;
}

TravelingMaxwellianParams maxwellian_from(const json &j, int d)
{
    const std::string where = "initial_data.parameters";
    only_keys(j, where, {"m", "alpha", "sigma", "beta", "B"});
    TravelingMaxwellianParams p;
    p.d = d;
    p.m = optional<double>(j, "m", 1.0, where);
    p.alpha = optional<double>(j, "alpha", 1.0, where);
    p.sigma = optional<double>(j, "sigma", 1.0, where);
    p.beta = optional<double>(j, "beta", 0.0, where);
    if (j.contains("B")) {
        const auto rows = required<std::vector<std::vector<double>>>(j, "B", where);
        if (static_cast<int>(rows.size()) != d)
            throw ConfigInvalid("B must be a d x d matrix");
        for (int r = 0; r < d; ++r) {
            if (static_cast<int>(rows[r].size()) != d)
                throw ConfigInvalid("B must be a d x d matrix");
            for (int c = 0; c < d; ++c)
                p.B[3 * r + c] = rows[r][c];
        }
    }
    return p;
}

// Smallest eigenvalue of Q = (ασ − β²)I + B² for skew B (d ≤ 3).
double q_min_eigenvalue(const TravelingMaxwellianParams &p)
{
    double frob = 0.0;
    for (double b : p.B)
        frob += b * b;
    return p.alpha * p.sigma - p.beta * p.beta - 0.5 * frob;
}

} // namespace

Grid SimulationConfig::grid() const
{
    return Grid::make(d_x, d_v, d_x == 0 ? 1 : n_x, n_v, L_x, v_max);
}

KernelParams SimulationConfig::kernel() const { return KernelParams::make(gamma, std::max(d_v, 2)); }

StepControl SimulationConfig::control() const
{
    StepControl c;
    c.cfl_safety = cfl_safety;
    c.dt_max = dt_max;
    c.t_final = t_final;
    c.output_every = output_every;
    c.form = form;
    c.collisions = collisions;
    return c;
}

DiagnosticSettings SimulationConfig::diagnostics() const
{
    DiagnosticSettings s;
    s.gamma = gamma;
    s.d0 = d0;
    s.K_diag = K_diag;
    s.sharp_v_power = weight_v_power;
    s.sharp_x_power = weight_x_power;
    s.coefficients = coefficient_diagnostics && d_v >= 2;
    return s;
}

std::vector<Bump> SimulationConfig::bumps() const
{
    const json &p = initial_parameters;
    std::vector<Bump> out;
    if (initial_kind == InitialKind::gaussian) {
        out.push_back(bump_from(p, "initial_data.parameters"));
    } else if (initial_kind == InitialKind::seed) {
        if (p.contains("bumps")) {
            only_keys(p, "initial_data.parameters", {"bumps"});
            const json &list = p.at("bumps");
            if (!list.is_array() || list.empty())
                throw ConfigInvalid("initial_data.parameters.bumps must be a non-empty array");
            for (std::size_t i = 0; i < list.size(); ++i)
                out.push_back(bump_from(list[i], "initial_data.parameters.bumps[" + std::to_string(i) + "]"));
        } else {
            // Default seed: two counter-moving bumps, far from any Maxwellian.
            only_keys(p, "initial_data.parameters", {});
            Bump a;
            a.u = {0.8, 0.0, 0.0};
            a.s_v = 0.5;
            Bump b = a;
            b.u = {-0.8, 0.0, 0.0};
            out = {a, b};
        }
    }
    return out;
}

SimulationConfig parse_config_text(const std::string &text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    if (!root.is_object())
        throw ParseError(1, "configuration must be a JSON object");

    only_keys(root, "configuration",
              {"gamma", "d0", "epsilon", "dims", "grid", "time", "initial_data", "diagnostics", "seed", "output",
               "solver"});
    SimulationConfig c;
    c.gamma = required<double>(root, "gamma", "configuration");
    c.d0 = optional<double>(root, "d0", c.d0, "configuration");
    c.epsilon = optional<double>(root, "epsilon", c.epsilon, "configuration");
    c.seed = optional<std::uint64_t>(root, "seed", c.seed, "configuration");

    const json &dims = section(root, "dims");
    only_keys(dims, "dims", {"d_x", "d_v"});
    c.d_x = required<int>(dims, "d_x", "dims");
    c.d_v = required<int>(dims, "d_v", "dims");

    const json &grid = section(root, "grid");
    only_keys(grid, "grid", {"n_x", "n_v", "L_x", "v_max"});
    c.n_x = optional<int>(grid, "n_x", c.d_x == 0 ? 1 : c.n_x, "grid");
    c.n_v = required<int>(grid, "n_v", "grid");
    c.L_x = optional<double>(grid, "L_x", c.L_x, "grid");
    c.v_max = required<double>(grid, "v_max", "grid");

    const json &time = section(root, "time");
    only_keys(time, "time", {"t_final", "cfl_safety", "dt_max", "output_every"});
    c.t_final = required<double>(time, "t_final", "time");
    c.cfl_safety = optional<double>(time, "cfl_safety", 0.5, "time");
    c.dt_max = optional<double>(time, "dt_max", std::max(c.t_final, 1e-300), "time");
    c.output_every = optional<double>(time, "output_every", std::max(c.t_final, 1e-300), "time");

    if (root.contains("solver")) {
        const json &solver = section(root, "solver");
        only_keys(solver, "solver", {"collisions", "form"});
        c.collisions = optional<bool>(solver, "collisions", true, "solver");
        const auto form = optional<std::string>(solver, "form", "divergence", "solver");
        if (form == "divergence")
            c.form = CollisionForm::divergence;
        else if (form == "nonconservative")
            c.form = CollisionForm::nonconservative;
        else
            throw ConfigInvalid("solver.form must be 'divergence' or 'nonconservative'");
    }

    const json &init = section(root, "initial_data");
    only_keys(init, "initial_data", {"kind", "parameters"});
    const auto kind = required<std::string>(init, "kind", "initial_data");
    if (kind == "gaussian")
        c.initial_kind = InitialKind::gaussian;
    else if (kind == "seed")
        c.initial_kind = InitialKind::seed;
    else if (kind == "maxwellian")
        c.initial_kind = InitialKind::maxwellian;
    else
        throw ConfigInvalid("initial_data.kind must be gaussian, seed or maxwellian");
    if (init.contains("parameters")) {
        if (!init.at("parameters").is_object())
            throw ConfigInvalid("initial_data.parameters must be an object");
        c.initial_parameters = init.at("parameters");
    }

    c.fit_window = {5.0, 0.8 * c.t_final};
    if (root.contains("diagnostics")) {
        const json &diag = section(root, "diagnostics");
        only_keys(diag, "diagnostics", {"K_diag", "fit_window", "weight_powers", "coefficients"});
        c.K_diag = optional<int>(diag, "K_diag", 2, "diagnostics");
        if (diag.contains("fit_window")) {
            const auto w = required<std::vector<double>>(diag, "fit_window", "diagnostics");
            if (w.size() != 2 || !(w[0] < w[1]))
                throw ConfigInvalid("diagnostics.fit_window must be [t_lo, t_hi] with t_lo < t_hi");
            c.fit_window = {w[0], w[1]};
        }
        if (diag.contains("weight_powers")) {
            const json &wp = diag.at("weight_powers");
            if (!wp.is_object())
                throw ConfigInvalid("diagnostics.weight_powers must be an object {v, x}");
            only_keys(wp, "diagnostics.weight_powers", {"v", "x"});
            c.weight_v_power = optional<double>(wp, "v", 2.0, "diagnostics.weight_powers");
            c.weight_x_power = optional<double>(wp, "x", 2.0, "diagnostics.weight_powers");
        }
        c.coefficient_diagnostics = optional<bool>(diag, "coefficients", true, "diagnostics");
    }

    if (root.contains("output")) {
        const json &out = section(root, "output");
        only_keys(out, "output", {"directory", "checkpoint_every"});
        c.output_directory = optional<std::string>(out, "directory", c.output_directory, "output");
        c.checkpoint_every = optional<double>(out, "checkpoint_every", 0.0, "output");
    }

    validate(c);
    return c;
}

SimulationConfig parse_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open configuration file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate(const SimulationConfig &c)
{
    if (!(c.gamma > -2.0 && c.gamma < 0.0))
        throw ConfigInvalid("gamma must lie in (-2,0)");
    if (c.d_x < 0 || c.d_x > 3 || c.d_v < 1 || c.d_v > 3)
        throw ConfigInvalid("dims: d_x must be in 0..3 and d_v in 1..3");
    if (c.collisions && c.d_v < 2)
        throw ConfigInvalid("dims: collisions need d_v in {2,3}; set solver.collisions = false for d_v = 1");
    if (!(c.epsilon >= 0.0) || !std::isfinite(c.epsilon))
        throw ConfigInvalid("epsilon must be finite and non-negative");
    if (!(c.d0 > 0.0))
        throw ConfigInvalid("d0 must be positive");
    if (!(c.t_final >= 0.0) || !(c.dt_max > 0.0) || !(c.output_every > 0.0))
        throw ConfigInvalid("time: need t_final >= 0, dt_max > 0 and output_every > 0");
    if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0))
        throw ConfigInvalid("time: cfl_safety must lie in (0,1]");
    if (c.K_diag < 0 || c.K_diag > 2)
        throw ConfigInvalid("diagnostics: K_diag must lie in 0..2");
    if (c.checkpoint_every < 0.0)
        throw ConfigInvalid("output: checkpoint_every must be non-negative");
    if (c.initial_kind == InitialKind::maxwellian && c.d_x != c.d_v)
        throw ConfigInvalid("initial_data: maxwellian data needs d_x = d_v");
    try {
        (void)c.grid();
    } catch (const Error &e) {
        throw ConfigInvalid(std::string("grid: ") + e.what());
    }

    // Support radius (where the data falls below tail_fraction of its peak)
    // and velocity decay rate of the data.
    const double tail = std::sqrt(std::log(1.0 / tail_fraction));
    double support = 0.0;
    double v_precision = std::numeric_limits<double>::infinity();
    if (c.initial_kind == InitialKind::maxwellian) {
        const TravelingMaxwellianParams p = maxwellian_from(c.initial_parameters, c.d_v);
        if (p.sqrt_det_q() <= 0.0 || !(p.alpha > 0.0 && p.sigma > 0.0))
            throw ConfigInvalid("initial_data: Maxwellian parameters violate the positivity constraint on Q");
        const double qmin = q_min_eigenvalue(p);
        support = std::sqrt(2.0) * tail / std::sqrt(qmin / p.sigma);
        v_precision = 0.5 * qmin / p.alpha;
    } else {
        for (const Bump &b : c.bumps()) {
            double r0 = 0.0;
            for (int a = 0; a < c.d_x; ++a)
                r0 += b.x0[a] * b.x0[a];
            support = std::max(support, std::sqrt(r0) + b.s_x * tail);
            v_precision = std::min(v_precision, 1.0 / (b.s_v * b.s_v));
        }
    }
    if (!(v_precision > 2.0 * c.d0))
        throw ConfigInvalid("gaussian-dominated: data must decay faster than exp(-2 d0 |v|^2); lower d0");
    if (c.d_x > 0 && c.v_max * c.t_final + support > 0.5 * c.L_x) {
        std::ostringstream os;
        os << "no-wrap: v_max*t_final + support = " << c.v_max * c.t_final + support << " exceeds L_x/2 = "
           << 0.5 * c.L_x;
        throw ConfigInvalid(os.str());
    }

    const DistributionField f = initial_data(c);
    const double peak = f.max_abs();
    if (peak > 0.0) {
        const Grid g = f.grid;
        const std::size_t nv = g.velocity_cells();
        double edge = 0.0;
        for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
            const auto xi = g.spatial_index(ix);
            bool x_edge = false;
            for (int a = 0; a < g.d_x; ++a)
                x_edge = x_edge || xi[a] == 0;
            for (std::size_t iv = 0; iv < nv; ++iv) {
                const auto vi = g.velocity_index(iv);
                bool v_edge = false;
                for (int a = 0; a < g.d_v; ++a)
                    v_edge = v_edge || vi[a] == 0 || vi[a] == g.n_v - 1;
                if (x_edge || v_edge)
                    edge = std::max(edge, std::abs(f.values[ix * nv + iv]));
            }
        }
        if (edge > tail_fraction * peak) {
            std::ostringstream os;
            os << "boundary: data reaches " << edge / peak << " of its maximum on the grid boundary (limit "
               << tail_fraction << "); enlarge v_max or L_x";
            throw ConfigInvalid(os.str());
        }
    }
}

DistributionField initial_data(const SimulationConfig &c)
{
    const Grid g = c.grid();
    DistributionField f(g, 0.0);
    if (c.epsilon == 0.0)
        return f;
    const std::size_t nv = g.velocity_cells();
    if (c.initial_kind == InitialKind::maxwellian) {
        const TravelingMaxwellianParams p = maxwellian_from(c.initial_parameters, c.d_v);
        f = sample_maxwellian_sharp(p, g);
        for (double &v : f.values)
            v *= c.epsilon;
        return f;
    }
    const auto bumps = c.bumps();
    for (std::size_t ix = 0; ix < g.spatial_cells(); ++ix) {
        const auto x = g.position(ix);
        for (std::size_t iv = 0; iv < nv; ++iv) {
            const auto v = g.velocity(iv);
            double s = 0.0;
            for (const Bump &b : bumps) {
                double ex = 0.0, ev = 0.0;
                for (int a = 0; a < g.d_x; ++a)
                    ex += (x[a] - b.x0[a]) * (x[a] - b.x0[a]);
                for (int a = 0; a < g.d_v; ++a)
                    ev += (v[a] - b.u[a]) * (v[a] - b.u[a]);
                s += b.weight * std::exp(-ex / (b.s_x * b.s_x) - ev / (b.s_v * b.s_v));
            }
            f.values[ix * nv + iv] = c.epsilon * s;
        }
    }
    return f;
}

} // namespace landau
