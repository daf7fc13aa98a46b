#pragma once

#include <filesystem>
#include <string>

#include "sll/field.hpp"

namespace sll {

// Plain-text field table: one header line, then one row per node (x1-major), %.17g values.
// Columns: x1, x2 (or r), rho, u1, u2, p, q, M, B, S, psi, label, omega.
void write_dump(const std::filesystem::path& path, const FlowField& flow);
std::string dump_file_name(double m, std::size_t nx, std::size_t ns);

// Inverse of write_dump. The layout is recovered from the rows; gamma and the closure kind are
// taken from the gas model. Schema violations raise InputError naming line and column.
FlowField read_dump(const std::filesystem::path& path, const thermo::GasModel& gas);

}  // namespace sll
