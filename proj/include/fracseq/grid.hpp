#pragma once

#include "fracseq/perm.hpp"
#include "fracseq/quad.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracseq {

struct Grid {
    std::string name;
    int dim = 0;
    std::vector<Point> generators;        // generator k is direction <k>
    std::optional<Quad> turn_cosine;      // successor constraint: every turn has this cosine

    Grid() = default;
    Grid(std::string name, std::vector<Point> generators, std::optional<Quad> turn_cosine = std::nullopt);

    int size() const { return static_cast<int>(generators.size()); }
    const Point& generator(int k) const { return generators.at(k - 1); }
    Quad length(int k) const;
    Point unit(int k) const;
};

Grid square_grid();
Grid cubic_grid(int d);
Grid triangular_grid();
Grid square_diagonal_grid();
Grid eighth_roots_grid();
Grid truncated_square_grid();
Grid honeycomb_grid();
Grid tri_hexagonal_grid();
// square, cubic<d>, triangular, square-diagonal, eighth-roots, truncated-square, honeycomb, tri-hexagonal
Grid grid_by_name(std::string_view name);
std::vector<std::string> grid_names();

bool is_grid_isometry(const SignedPermutation& p, const Grid& g, bool strict_lengths = false);

struct Polyline {
    int dim = 0;
    std::vector<Point> vertices;
    bool closed = false;

    std::size_t edge_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

// Without lengths each step is the generator; with lengths each step has that Euclidean length.
Polyline trace(const Digits& s, const Grid& g, const std::vector<Quad>* lengths = nullptr);
Point orientation(const Digits& s, const Grid& g);

struct SelfAvoidanceReport {
    std::size_t vertex_count = 0;   // visits; the closing vertex of a closed curve is not counted twice
    std::size_t distinct_vertices = 0;
    std::size_t edge_count = 0;
    std::size_t distinct_edges = 0;
    int max_vertex_multiplicity = 0;
    int max_edge_multiplicity = 0;
    std::size_t partial_overlaps = 0;
    bool vertex_covering = false;  // every vertex visited once
    bool edge_covering = false;    // every edge once, every vertex at most twice
    bool overlap = false;          // a repeated edge or a partial overlap
};

SelfAvoidanceReport self_avoidance_report(const Polyline& p);

struct Box {
    std::vector<long long> lo, hi;  // inclusive lattice bounds
};

struct CoverageReport {
    std::size_t total = 0;
    std::size_t visited = 0;
    std::vector<std::vector<long long>> missed;  // capped
    double fraction() const { return total ? static_cast<double>(visited) / static_cast<double>(total) : 1.0; }
    bool complete() const { return visited == total; }
};

CoverageReport coverage_report(const Polyline& p, const Box& region, std::size_t missed_cap = 32);
Box bounding_box(const Polyline& p);  // lattice box of the integer-rounded extent

// Multiplicity per vertex (counted as in self_avoidance_report) for square-lattice checks.
struct LatticeEdgeReport {
    bool all_edges_once = false;
    std::size_t saturated_vertices = 0;   // all 2d incident lattice edges are traversed
    std::size_t saturated_bad = 0;        // of those, multiplicity != 2
    int max_vertex_multiplicity = 0;
};
LatticeEdgeReport lattice_edge_report(const Polyline& p);

std::vector<Quad> turn_cosines(const Digits& s, const Grid& g);
bool satisfies_successor_constraint(const Digits& s, const Grid& g);

enum class Projection { Identity, Isometric, Orthographic };

struct RenderOptions {
    double stroke_width = 1.0;
    bool rounded_corners = false;
    double scale = 10.0;
    double margin = 10.0;
    Projection projection = Projection::Identity;
};

std::string svg_export(const Polyline& p, const RenderOptions& opts = {});
std::string export_csv(const Polyline& p);
std::string export_obj(const Polyline& p);

}  // namespace fracseq
