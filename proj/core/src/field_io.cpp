#include "helical/field_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace helical {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t out = 0;
        for (int b = 0; b < 8; ++b) out |= ((v >> (8 * b)) & 0xffu) << (8 * (7 - b));
        return out;
    }
    return v;
}

std::filesystem::path sidecar_path(std::filesystem::path p) { return p.replace_extension(".json"); }

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_field_csv(const ScalarField2D& field, const std::filesystem::path& path) {
    std::ofstream out = open_out(path, std::ios::out | std::ios::trunc);
    const GridDomain& d = field.domain();
    out << "x,y,value\n";
    for (std::size_t k = 0; k < d.node_count(); ++k) {
        out << format_double(d.node_x(k)) << ',' << format_double(d.node_y(k)) << ','
            << format_double(field[k]) << '\n';
    }
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

void write_field_raw(const ScalarField2D& field, const FieldMeta& meta,
                     const std::filesystem::path& path) {
    const GridDomain& d = field.domain();
    {
        std::ofstream out = open_out(path, std::ios::out | std::ios::binary | std::ios::trunc);
        for (const double v : field.values()) {
            const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(v));
            out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
        }
        if (!out) {
            throw std::runtime_error("write failed for " + path.string());
        }
    }
    nlohmann::json header = {
        {"n", d.n()}, {"radius", d.radius()}, {"kappa", meta.kappa},
        {"time", meta.time}, {"name", meta.name},
    };
    std::ofstream side = open_out(sidecar_path(path), std::ios::out | std::ios::trunc);
    side << header.dump(2) << '\n';
}

namespace {

LoadedField load(const std::filesystem::path& path, std::shared_ptr<const GridDomain> domain,
                 bool rebuild) {
    std::ifstream side(sidecar_path(path));
    if (!side) {
        throw std::runtime_error("missing sidecar for " + path.string());
    }
    nlohmann::json header;
    try {
        side >> header;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("bad sidecar for " + path.string() + ": " + e.what());
    }
    int n = 0;
    double radius = 0.0;
    FieldMeta meta;
    try {
        n = header.at("n").get<int>();
        radius = header.at("radius").get<double>();
        meta.kappa = header.at("kappa").get<double>();
        meta.time = header.at("time").get<double>();
        meta.name = header.at("name").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("bad sidecar for " + path.string() + ": " + e.what());
    }
    if (rebuild) {
        domain = build_disk_domain(radius, n);
    } else if (domain->n() != n || domain->radius() != radius) {
        throw std::runtime_error("dump " + path.string() + " was written on another grid");
    }
    const std::size_t count = domain->node_count();
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<double> values(count);
    for (double& v : values) {
        std::uint64_t bits = 0;
        if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
            throw std::runtime_error("truncated dump " + path.string());
        }
        v = std::bit_cast<double>(to_little_endian(bits));
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw std::runtime_error("trailing bytes in dump " + path.string());
    }
    return {ScalarField2D(std::move(domain), std::move(values)), std::move(meta)};
}

}  // namespace

LoadedField read_field_raw(const std::filesystem::path& path) { return load(path, nullptr, true); }

LoadedField read_field_raw(const std::filesystem::path& path,
                           std::shared_ptr<const GridDomain> domain) {
    if (!domain) {
        throw std::invalid_argument("read_field_raw: null domain");
    }
    return load(path, std::move(domain), false);
}

}  // namespace helical
