#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spectral_glue/boundary_group.hpp"
#include "spectral_glue/geometry.hpp"
#include "spectral_glue/pwexp.hpp"
#include "spectral_glue/spectrum.hpp"
#include "spectral_glue/tiling.hpp"

namespace spectral_glue::io {

using Json = nlohmann::json;

// Readers throw Error(invalid_input) on any schema violation.

/// {"intervals": [[a, b], ...]}, with "-inf" / "+inf" for unbounded ends.
Json to_json(const IntervalUnion& omega);
IntervalUnion interval_union_from_json(const Json& j);

/// {"dim": d, "boxes": [[[a1, b1], ..., [ad, bd]], ...], "full_axes": [j, ...]}.
Json to_json(const BoxUnion& omega);
BoxUnion box_union_from_json(const Json& j);
/// True when j uses the box-union schema rather than the interval one.
bool is_box_union(const Json& j);

/// {"re": x, "im": y}
Json to_json(Complex z);
Complex complex_from_json(const Json& j);

/// {"pieces": [{"support": [a, b], "amp": {"re": x, "im": y}, "freq": f}, ...]}
Json to_json(const PiecewiseExp& f);
PiecewiseExp pwexp_from_json(const Json& j);

/// {"rows": p, "cols": q, "entries": [[{"re", "im"}, ...], ...],
///  "row_index": [...], "col_index": [...]}; the index lists may be omitted.
Json to_json(const BoundaryMatrix& b);
BoundaryMatrix boundary_from_json(const Json& j);

/// {"A": [[...]], "d1": k}; entries are numbers or strings such as "1/3".
/// Decimal literals are read as the decimal they spell (0.1 is 1/10).
Json to_json(const Lattice& lattice);
Lattice lattice_from_json(const Json& j);

/// {"tiles": bool, "overlap": "p/q", "uncovered": "p/q", "measure": "p/q",
///  "cell_measure": "p/q"}
Json to_json(const TilingReport& report);

Json to_json(const SpectrumSet& spectrum);

/// Shortest decimal that reads back to the same double (at most 17 digits).
std::string format_double(double x);

/// lambda, multiplicity, then re/im columns for every coefficient vector;
/// rows with fewer vectors are padded with empty fields.
std::string spectrum_csv(const SpectrumSet& spectrum);

/// Stem plot of lambda with stem height = multiplicity.
std::string spectrum_svg(const SpectrumSet& spectrum);

/// Eigenphases of S(lambda) sampled across [lo, hi].
std::string eigenphases_svg(const IntervalUnion& omega, const BoundaryMatrix& boundary, double lo,
                            double hi, std::size_t samples = 400);

/// |f| of each snapshot on a 2048-point grid per component.
std::string snapshots_svg(const IntervalUnion& omega,
                          const std::vector<std::pair<double, PiecewiseExp>>& snapshots);

Json read_json_file(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never observe a partial file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace spectral_glue::io
