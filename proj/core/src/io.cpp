#include "qam/io.hpp"
#include "qam/errors.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>

namespace qam {

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw config_error("cannot open '" + path + "' for writing");
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string CsvWriter::quote(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
    std::string q = "\"";
    for (char c : raw) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    q += '"';
    return q;
}

CsvWriter& CsvWriter::field(const std::string& s) {
    if (!first_in_row_) out_ << ',';
    out_ << quote(s);
    first_in_row_ = false;
    return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format(v)); }

CsvWriter& CsvWriter::field(std::int64_t v) { return field(std::to_string(v)); }

void CsvWriter::end_row() {
    out_ << "\r\n";
    first_in_row_ = true;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (const auto& f : fields) field(f);
    end_row();
}

namespace {
constexpr char kMatMagic[8] = {'Q', 'A', 'M', 'C', 'M', 'A', 'T', '1'};
constexpr char kWigMagic[8] = {'Q', 'A', 'M', 'W', 'G', 'R', 'D', '1'};
} // namespace

void write_matrix(const std::string& path, const Matrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out.write(kMatMagic, 8);
    const std::int64_t r = m.rows(), c = m.cols();
    out.write(reinterpret_cast<const char*>(&r), 8);
    out.write(reinterpret_cast<const char*>(&c), 8);
    out.write(reinterpret_cast<const char*>(m.data()),
              static_cast<std::streamsize>(sizeof(Complex) * m.size()));
}

Matrix read_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open '" + path + "'");
    char magic[8];
    in.read(magic, 8);
    if (std::memcmp(magic, kMatMagic, 8) != 0)
        throw config_error("'" + path + "' is not a matrix dump");
    std::int64_t r = 0, c = 0;
    in.read(reinterpret_cast<char*>(&r), 8);
    in.read(reinterpret_cast<char*>(&c), 8);
    if (r <= 0 || c <= 0 || r > 100000 || c > 100000)
        throw config_error("'" + path + "': corrupt matrix header");
    Matrix m(r, c);
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(sizeof(Complex) * m.size()));
    if (!in) throw config_error("'" + path + "': truncated matrix data");
    return m;
}

void write_wigner_binary(const std::string& path, double x_min, double x_max, double p_min,
                         double p_max, const Eigen::MatrixXd& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out.write(kWigMagic, 8);
    const double header[4] = {x_min, x_max, p_min, p_max};
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    const std::int64_t n = values.rows();
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(sizeof(double) * values.size()));
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace qam
