#include "landau/io.hpp"

#include "landau/errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace landau::io {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json to_json(const DiagnosticRecord &r)
{
    ordered_json j;
    j["t"] = r.t;
    j["mass"] = r.mass;
    j["momentum"] = r.momentum;
    j["energy"] = r.energy;
    j["rho_sup"] = r.rho_sup;
    j["m_sup"] = r.m_sup;
    j["e_sup"] = r.e_sup;
    j["E_norms"] = r.E_norms;
    j["Z_norms"] = r.Z_norms;
    j["a_bar_plain_sup"] = r.a_bar_plain_sup;
    j["a_bar_weighted_sup"] = r.a_bar_weighted_sup;
    j["c_bar_sup"] = r.c_bar_sup;
    j["null_term_sup"] = r.null_term_sup;
    j["sharp_diff_vs_t0"] = r.sharp_diff_vs_t0;
    j["h_value"] = r.h_value;
    j["clipped_mass"] = r.clipped_mass;
    return j;
}

DiagnosticRecord record_from_json(const nlohmann::json &j)
{
    DiagnosticRecord r;
    try {
        r.t = j.at("t").get<double>();
        r.mass = j.at("mass").get<double>();
        r.momentum = j.at("momentum").get<std::array<double, 3>>();
        r.energy = j.at("energy").get<double>();
        r.rho_sup = j.at("rho_sup").get<double>();
        r.m_sup = j.at("m_sup").get<double>();
        r.e_sup = j.at("e_sup").get<double>();
        r.E_norms = j.at("E_norms").get<std::vector<std::array<double, 2>>>();
        r.Z_norms = j.at("Z_norms").get<std::vector<double>>();
        r.a_bar_plain_sup = j.at("a_bar_plain_sup").get<double>();
        r.a_bar_weighted_sup = j.at("a_bar_weighted_sup").get<double>();
        r.c_bar_sup = j.at("c_bar_sup").get<double>();
        r.null_term_sup = j.at("null_term_sup").get<double>();
        r.sharp_diff_vs_t0 = j.at("sharp_diff_vs_t0").get<double>();
        r.h_value = j.at("h_value").get<double>();
        r.clipped_mass = j.at("clipped_mass").get<double>();
    } catch (const json::exception &e) {
        throw ParseError(1, std::string("diagnostic record: ") + e.what());
    }
    return r;
}

std::string ndjson_line(const DiagnosticRecord &r) { return to_json(r).dump(); }

std::vector<DiagnosticRecord> read_ndjson(std::istream &in)
{
    std::vector<DiagnosticRecord> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            out.push_back(record_from_json(json::parse(line)));
        } catch (const json::exception &e) {
            throw ParseError(lineno, e.what());
        } catch (const ParseError &e) {
            throw ParseError(lineno, e.what());
        }
    }
    return out;
}

std::vector<DiagnosticRecord> read_ndjson_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    return read_ndjson(in);
}

void write_csv(std::ostream &out, const std::vector<DiagnosticRecord> &records)
{
    std::size_t ne = 0, nz = 0;
    for (const auto &r : records) {
        ne = std::max(ne, r.E_norms.size());
        nz = std::max(nz, r.Z_norms.size());
    }
    out << "t,mass,momentum_0,momentum_1,momentum_2,energy,rho_sup,m_sup,e_sup";
    for (std::size_t k = 0; k < ne; ++k)
        out << ",E_norms_" << k << "_fixed,E_norms_" << k << "_running";
    for (std::size_t k = 0; k < nz; ++k)
        out << ",Z_norms_" << k;
    out << ",a_bar_plain_sup,a_bar_weighted_sup,c_bar_sup,null_term_sup,sharp_diff_vs_t0,h_value,clipped_mass\n";

    // Values go through the JSON number formatter so CSV and NDJSON agree
    // digit for digit.
    auto num = [](double v) { return json(v).dump(); };
    for (const auto &r : records) {
        out << num(r.t) << ',' << num(r.mass);
        for (double m : r.momentum)
            out << ',' << num(m);
        out << ',' << num(r.energy) << ',' << num(r.rho_sup) << ',' << num(r.m_sup) << ',' << num(r.e_sup);
        for (std::size_t k = 0; k < ne; ++k) {
            if (k < r.E_norms.size())
                out << ',' << num(r.E_norms[k][0]) << ',' << num(r.E_norms[k][1]);
            else
                out << ",,";
        }
        for (std::size_t k = 0; k < nz; ++k)
            out << ',' << (k < r.Z_norms.size() ? num(r.Z_norms[k]) : std::string());
        out << ',' << num(r.a_bar_plain_sup) << ',' << num(r.a_bar_weighted_sup) << ',' << num(r.c_bar_sup) << ','
            << num(r.null_term_sup) << ',' << num(r.sharp_diff_vs_t0) << ',' << num(r.h_value) << ','
            << num(r.clipped_mass) << '\n';
    }
}

namespace {

constexpr char magic[4] = {'L', 'N', 'D', 'K'};
constexpr std::uint32_t version = 1;

void put_u64(std::string &s, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        s.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::string &s, double v) { put_u64(s, std::bit_cast<std::uint64_t>(v)); }

class Reader {
public:
    explicit Reader(const std::string &s) : s_(s) {}

    std::uint64_t u(int bytes)
    {
        if (pos_ + bytes > s_.size())
            throw IoError("checkpoint truncated");
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s_[pos_ + i])) << (8 * i);
        pos_ += bytes;
        return v;
    }
    std::int64_t i64() { return static_cast<std::int64_t>(u(8)); }
    double f64() { return std::bit_cast<double>(u(8)); }
    [[nodiscard]] std::size_t remaining() const { return s_.size() - pos_; }
    void skip(std::size_t n) { pos_ += n; }

private:
    const std::string &s_;
    std::size_t pos_ = 0;
};

} // namespace

std::string encode_checkpoint(const DistributionField &f, double gamma)
{
    const Grid &g = f.grid;
    std::string s(magic, 4);
    for (int i = 0; i < 4; ++i)
        s.push_back(static_cast<char>((version >> (8 * i)) & 0xffu));
    put_u64(s, static_cast<std::uint64_t>(g.d_x));
    put_u64(s, static_cast<std::uint64_t>(g.d_v));
    put_u64(s, static_cast<std::uint64_t>(g.n_x));
    put_u64(s, static_cast<std::uint64_t>(g.n_v));
    put_f64(s, g.L_x);
    put_f64(s, g.v_max);
    put_f64(s, gamma);
    put_f64(s, f.time);
    s.reserve(s.size() + 8 * f.values.size());
    for (double v : f.values)
        put_f64(s, v);
    return s;
}

Checkpoint decode_checkpoint(const std::string &bytes)
{
    if (bytes.size() < 8 || std::memcmp(bytes.data(), magic, 4) != 0)
        throw IoError("not a checkpoint (bad magic)");
    Reader r(bytes);
    r.skip(4);
    const auto ver = r.u(4);
    if (ver != version)
        throw IoError("unsupported checkpoint version " + std::to_string(ver));
    const auto d_x = r.i64(), d_v = r.i64(), n_x = r.i64(), n_v = r.i64();
    const double L_x = r.f64(), v_max = r.f64(), gamma = r.f64(), t = r.f64();
    Grid g;
    try {
        g = Grid::make(static_cast<int>(d_x), static_cast<int>(d_v), static_cast<int>(n_x), static_cast<int>(n_v),
                       L_x, v_max);
    } catch (const Error &e) {
        throw IoError(std::string("checkpoint header: ") + e.what());
    }
    if (r.remaining() != 8 * g.size())
        throw IoError("checkpoint payload size does not match its header");
    Checkpoint c{DistributionField(g, t), gamma};
    for (double &v : c.f.values)
        v = r.f64();
    return c;
}

void save_checkpoint(const std::string &path, const DistributionField &f, double gamma)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path);
    const std::string bytes = encode_checkpoint(f, gamma);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed for " + path);
}

Checkpoint load_checkpoint(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_checkpoint(buf.str());
}

} // namespace landau::io
