#pragma once

#include "fracseq/grid.hpp"
#include "fracseq/substitution.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fracseq {

enum class GeoCheck {
    VertexCover,     // visits every vertex of its bounding box once
    EdgeCover,       // every lattice edge once, full-degree vertices twice
    Closed,          // exit equals entry
    SelfAvoiding,    // no repeated vertex or edge, no partial overlap
    HyperOrthogonal, // (d-2)-hyper-orthogonal
    Hamiltonian,     // Gray: every unit-cube vertex once
    Successor,       // every turn obeys the grid's successor constraint
    LatticeVertices, // with the length stream every vertex lies on Z^d
    PartialOverlap,  // unit edges on a dense grid: some edges overlap in part
};

std::string geo_check_name(GeoCheck c);

struct CatalogEntry {
    std::string id;
    std::string title;
    Grid grid;  // dim 0 means the cubic grid of the curve's dimension
    std::shared_ptr<const SubstitutionSystem> system;
    Digits expected_prefix;
    std::string oeis;   // empty when not listed
    std::string notes;
    bool extending = true;
    std::vector<GeoCheck> checks;
    int check_level = 3;  // level used for geometric checks
    int cover_base = 2;   // vertex cover: the first (base^k)^d vertices fill a cube
    bool unit_edges = false;  // draw with unit edges even when a length stream exists

    const Digiset& digiset() const { return system->digiset; }
};

// Ordered by compare on the expected prefixes, ties in listing order.
const std::vector<CatalogEntry>& catalog_list();
// Throws std::out_of_range for unknown ids.
const CatalogEntry& find_entry(std::string_view id);
Grid entry_grid(const CatalogEntry& e, int dim_hint = 0);

// First `count` terms; lengths are filled when the system has a length stream.
Curve generate_entry(std::string_view id, std::size_t count);
Curve generate_level(std::string_view id, int level);
// The k-curve traced on the entry's grid, with the length stream unless the entry draws unit edges.
Polyline draw_level(std::string_view id, int level);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::string id;
    std::vector<CheckResult> checks;
    bool ok() const;
};

VerificationReport verify_entry(std::string_view id);

// Secondary systems used by tests and the CLI.
SubstitutionSystem gray_system_uniform();     // T1, length-2 images
SubstitutionSystem gray_system_nonuniform();  // T2
SubstitutionSystem hilbert_digit_system();    // variant-digit Hilbert rule
SubstitutionSystem hilbert_drawing_system();  // unnormalized whole-curve form, not extending
SubstitutionSystem beta_omega_whole_system(); // three-state form of the beta-Omega curve
SubstitutionSystem arndt_system();

// Exact log base sqrt2 of 2^(j/2); throws when the length is not such a power.
int log_sqrt2(const Quad& length);

// Lines "n a(n)" from 1; `<id>-lengths` exports the log-sqrt2 length stream.
std::string export_bfile(const Digits& values);
std::string export_bfile(std::string_view id, std::size_t count);
std::vector<std::pair<long long, long long>> parse_bfile(std::string_view text);
Digits bfile_values(std::string_view text);

}  // namespace fracseq
