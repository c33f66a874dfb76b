#pragma once

#include <string>

#include "acclab/matrix.hpp"
#include "acclab/problem.hpp"

namespace acclab {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

// Dataset CSV: header "f0,...,f{d-1},label", one row per sample, label 0 or 1.
// Class-0 rows populate x and class-1 rows populate y, each in file order.
// Throws std::runtime_error on I/O failure and std::invalid_argument on
// malformed content (bad header, non-numeric cell, label outside {0,1},
// ragged rows, non-finite values, or an empty class).
TwoSampleData read_two_sample_csv(const std::string& path);
void write_two_sample_csv(const std::string& path, const TwoSampleData& data);

// Headerless rectangular CSV of doubles (covariance matrices).
Matrix read_matrix_csv(const std::string& path);

}  // namespace acclab
