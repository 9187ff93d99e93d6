#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace condshrink {

// File ingestion and emission used by the CLI.  All readers throw
// std::domain_error with a line-numbered message on malformed input; writers
// go through a temp file plus atomic rename so failed runs leave no partial
// output behind.

// Comma-separated numeric matrix, no header, one observation per row.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

// Newline-separated eigenvalue list; must be non-increasing, all finite.
std::vector<double> read_eigenvalue_list(const std::string& path);

// Write content to path via temp file + rename.
void atomic_write(const std::string& path, const std::string& content);

// 12 significant digits; enough to verify 1e-9 scale invariants from files.
std::string format_number(double x);

std::string matrix_to_csv(const Eigen::MatrixXd& m);

}  // namespace condshrink
