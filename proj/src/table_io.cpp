#include "speclab/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace speclab::table_io {

namespace {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

std::string serialize_table(const fuchsian::GeodesicTable& table) {
    std::ostringstream out;
    out << "LSPEC v1 preset=" << table.preset << " genus=" << table.genus
        << " maxlen=" << format_double(table.cutoff) << "\n";
    for (const auto& c : table.classes) {
        out << "word=" << word_to_string(c.canonical_word)
            << " len=" << format_double(c.length)
            << " prim=" << (c.primitive ? 1 : 0) << " pair=" << c.inverse_pair
            << " p0=" << (c.p0_representative ? 1 : 0) << "\n";
    }
    return out.str();
}

void write_table(const fuchsian::GeodesicTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_table: cannot open " + path);
    f << serialize_table(table);
    if (!f) throw std::runtime_error("write_table: write failed: " + path);
}

namespace {

std::string expect_field(std::istringstream& ss, const std::string& key) {
    std::string tok;
    if (!(ss >> tok) || tok.rfind(key + "=", 0) != 0)
        throw std::runtime_error("read_table: expected field " + key);
    return tok.substr(key.size() + 1);
}

}  // namespace

fuchsian::GeodesicTable read_table(const std::string& path,
                                   const fuchsian::SurfaceGroup& g) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_table: cannot open " + path);
    std::string line;
    if (!std::getline(f, line))
        throw std::runtime_error("read_table: empty file");
    {
        std::istringstream ss(line);
        std::string magic, version;
        ss >> magic >> version;
        if (magic != "LSPEC")
            throw std::runtime_error("read_table: not a geodesic cache");
        if (version != "v1")
            throw std::runtime_error("read_table: unknown version " + version);
    }
    fuchsian::GeodesicTable table;
    {
        std::istringstream ss(line);
        std::string skip;
        ss >> skip >> skip;
        table.preset = expect_field(ss, "preset");
        table.genus = std::stoi(expect_field(ss, "genus"));
        table.cutoff = std::stod(expect_field(ss, "maxlen"));
    }
    if (table.preset != g.preset || table.genus != g.genus)
        throw std::runtime_error("read_table: cache preset mismatch");

    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        fuchsian::PrimitiveClass c;
        c.canonical_word = word_from_string(expect_field(ss, "word"));
        c.length = std::stod(expect_field(ss, "len"));
        c.primitive = expect_field(ss, "prim") == "1";
        c.inverse_pair = std::stoi(expect_field(ss, "pair"));
        c.p0_representative = expect_field(ss, "p0") == "1";
        std::string extra;
        if (ss >> extra)
            throw std::runtime_error("read_table: trailing junk in record");
        table.classes.push_back(std::move(c));
    }

    // integrity checks ("checksum"): order, pairing, stored lengths
    for (size_t i = 0; i < table.classes.size(); i++) {
        const auto& c = table.classes[i];
        if (i > 0) {
            const auto& p = table.classes[i - 1];
            bool ordered = p.length < c.length ||
                           (p.length == c.length &&
                            word_less(p.canonical_word, c.canonical_word));
            if (!ordered) throw std::runtime_error("read_table: records unsorted");
        }
        if (c.inverse_pair < 0 || c.inverse_pair >= (int)table.classes.size() ||
            c.inverse_pair == (int)i)
            throw std::runtime_error("read_table: bad pair index");
        if (table.classes[c.inverse_pair].inverse_pair != (int)i)
            throw std::runtime_error("read_table: pairing not an involution");
        if (c.p0_representative == table.classes[c.inverse_pair].p0_representative)
            throw std::runtime_error("read_table: p0 marks inconsistent");
        double len = translation_length(word_matrix(g, c.canonical_word));
        if (std::fabs(len - c.length) > 1e-9)
            throw std::runtime_error("read_table: length checksum failure");
        if (c.length > table.cutoff + 1e-9)
            throw std::runtime_error("read_table: class beyond cutoff");
    }
    return table;
}

std::uint64_t file_hash(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("file_hash: cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (f.read(buf, sizeof buf) || f.gcount() > 0) {
        for (std::streamsize i = 0; i < f.gcount(); i++) {
            h ^= (unsigned char)buf[i];
            h *= 1099511628211ull;
        }
        if (!f) break;
    }
    return h;
}

}  // namespace speclab::table_io
