#include "helical/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "helical/field_io.hpp"

namespace helical {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ConfigError("expected a number, got '" + std::string(s) + "'");
    }
    return v;
}

template <typename Int>
Int to_int(std::string_view s) {
    Int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ConfigError("expected an integer, got '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        const std::string_view item = trim(s.substr(0, comma));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    return out;
}

struct Field {
    std::string_view key;
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;
};

template <typename M>
Field real(std::string_view key, M member) {
    return {key, [member](SimConfig& c, std::string_view v) { member(c) = to_double(v); },
            [member](const SimConfig& c) { return format_double(member(c)); }};
}

template <typename M>
Field integer(std::string_view key, M member) {
    return {key,
            [member](SimConfig& c, std::string_view v) {
                member(c) = to_int<std::remove_cvref_t<decltype(member(c))>>(v);
            },
            [member](const SimConfig& c) { return std::to_string(member(c)); }};
}

template <typename M>
Field text(std::string_view key, M member) {
    return {key, [member](SimConfig& c, std::string_view v) { member(c) = std::string(v); },
            [member](const SimConfig& c) { return member(c); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        real("domain.radius", [](auto& c) -> auto& { return c.domain.radius; }),
        integer("domain.n", [](auto& c) -> auto& { return c.domain.n; }),
        real("helix.kappa", [](auto& c) -> auto& { return c.helix.kappa; }),
        real("time.dt", [](auto& c) -> auto& { return c.time.dt; }),
        real("time.t_end", [](auto& c) -> auto& { return c.time.t_end; }),
        integer("time.output_stride", [](auto& c) -> auto& { return c.time.output_stride; }),
        text("init.preset", [](auto& c) -> auto& { return c.init.preset; }),
        real("init.amplitude", [](auto& c) -> auto& { return c.init.amplitude; }),
        real("init.center_x", [](auto& c) -> auto& { return c.init.center_x; }),
        real("init.center_y", [](auto& c) -> auto& { return c.init.center_y; }),
        real("init.width", [](auto& c) -> auto& { return c.init.width; }),
        real("init.radius", [](auto& c) -> auto& { return c.init.radius; }),
        real("init.mollify_eps", [](auto& c) -> auto& { return c.init.mollify_eps; }),
        text("forcing.preset", [](auto& c) -> auto& { return c.forcing.preset; }),
        real("forcing.amplitude", [](auto& c) -> auto& { return c.forcing.amplitude; }),
        real("forcing.center_x", [](auto& c) -> auto& { return c.forcing.center_x; }),
        real("forcing.center_y", [](auto& c) -> auto& { return c.forcing.center_y; }),
        real("forcing.width", [](auto& c) -> auto& { return c.forcing.width; }),
        real("solver.tol", [](auto& c) -> auto& { return c.solver.tol; }),
        integer("solver.max_iter", [](auto& c) -> auto& { return c.solver.max_iter; }),
        text("output.directory", [](auto& c) -> auto& { return c.output.directory; }),
        {"output.formats",
         [](SimConfig& c, std::string_view v) { c.output.formats = split_list(v); },
         [](const SimConfig& c) { return join_list(c.output.formats); }},
        integer("run.seed", [](auto& c) -> auto& { return c.run.seed; }),
    };
    return table;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

int SimConfig::step_count() const { return static_cast<int>(std::llround(time.t_end / time.dt)); }

void validate(const SimConfig& c) {
    require(std::isfinite(c.domain.radius) && c.domain.radius > 0.0, "domain.radius must be positive");
    require(c.domain.n >= 8, "domain.n must be at least 8");
    require(std::isfinite(c.helix.kappa) && c.helix.kappa != 0.0, "helix.kappa must be nonzero");
    require(std::isfinite(c.time.dt) && c.time.dt > 0.0, "time.dt must be positive");
    require(std::isfinite(c.time.t_end) && c.time.t_end >= 0.0, "time.t_end must be >= 0");
    const double steps = c.time.t_end / c.time.dt;
    require(std::abs(steps - std::round(steps)) <= 1e-9 * std::max(1.0, steps),
            "time.t_end must be a whole number of time.dt steps");
    require(c.time.output_stride >= 1, "time.output_stride must be >= 1");
    try {
        parse_preset(c.init.preset);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (const double v : {c.init.amplitude, c.init.center_x, c.init.center_y, c.forcing.amplitude,
                           c.forcing.center_x, c.forcing.center_y}) {
        require(std::isfinite(v), "init/forcing parameters must be finite");
    }
    require(std::isfinite(c.init.width) && c.init.width > 0.0, "init.width must be positive");
    require(std::isfinite(c.init.radius) && c.init.radius > 0.0, "init.radius must be positive");
    require(std::isfinite(c.init.mollify_eps) && c.init.mollify_eps >= 0.0,
            "init.mollify_eps must be >= 0 (0 disables)");
    require(c.forcing.preset == "zero" || c.forcing.preset == "constant" ||
                c.forcing.preset == "gaussian",
            "forcing.preset must be zero, constant or gaussian");
    require(std::isfinite(c.forcing.width) && c.forcing.width > 0.0, "forcing.width must be positive");
    require(std::isfinite(c.solver.tol) && c.solver.tol > 0.0, "solver.tol must be positive");
    require(c.solver.max_iter >= 1, "solver.max_iter must be >= 1");
    require(!c.output.directory.empty(), "output.directory must not be empty");
    for (const std::string& f : c.output.formats) {
        require(f == "csv" || f == "bin", "output.formats entries must be csv or bin, got '" + f + "'");
    }
}

SimConfig parse_config(std::string_view text) {
    SimConfig config;
    std::set<std::string_view> seen;
    int line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) {
            throw ConfigError(where + "expected 'key = value'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const Field* field = nullptr;
        for (const Field& f : fields()) {
            if (f.key == key) field = &f;
        }
        if (field == nullptr) {
            throw ConfigError(where + "unknown key '" + std::string(key) + "'");
        }
        if (!seen.insert(field->key).second) {
            throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
        }
        try {
            field->set(config, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + std::string(key) + ": " + e.what());
        }
    }
    validate(config);
    return config;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const SimConfig& config) {
    std::string out;
    for (const Field& f : fields()) {
        out += f.key;
        out += " = ";
        out += f.get(config);
        out += '\n';
    }
    return out;
}

InitPreset init_preset(const SimConfig& c) {
    InitPreset p;
    p.kind = parse_preset(c.init.preset);
    p.amplitude = c.init.amplitude;
    p.center_x = c.init.center_x;
    p.center_y = c.init.center_y;
    p.width = c.init.width;
    p.radius = c.init.radius;
    return p;
}

ForcingSpec forcing_spec(const SimConfig& c) {
    if (c.forcing.preset == "constant") return ForcingSpec::constant(c.forcing.amplitude);
    if (c.forcing.preset == "gaussian") {
        return ForcingSpec::gaussian(c.forcing.amplitude, c.forcing.center_x, c.forcing.center_y,
                                     c.forcing.width);
    }
    return ForcingSpec::zero();
}

SolverSettings solver_settings(const SimConfig& c) { return {c.solver.tol, c.solver.max_iter}; }

}  // namespace helical
