#pragma once

#include "qam/fock.hpp"

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace qam {

// RFC-4180 CSV writer with deterministic %.17g numeric formatting.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void row(const std::vector<std::string>& fields);
    CsvWriter& field(const std::string& s);
    CsvWriter& field(double v);
    CsvWriter& field(std::int64_t v);
    void end_row();

    static std::string format(double v);
    static std::string quote(const std::string& raw);

private:
    std::ofstream out_;
    bool first_in_row_ = true;
};

// Complex matrix dump: "QAMCMAT1" magic, int64 rows/cols, column-major
// doubles (re, im interleaved).
void write_matrix(const std::string& path, const Matrix& m);
Matrix read_matrix(const std::string& path);

// Wigner grid dump: "QAMWGRD1" magic, doubles x_min,x_max,p_min,p_max,
// int64 N, then N*N doubles (x-major).
void write_wigner_binary(const std::string& path, double x_min, double x_max, double p_min,
                         double p_max, const Eigen::MatrixXd& values);

// FNV-1a over a string; used for the config hash recorded in manifests.
std::uint64_t fnv1a(const std::string& data);

} // namespace qam
