#pragma once

#include "fracseq/perm.hpp"
#include "fracseq/substitution.hpp"

#include <string>
#include <vector>

namespace fracseq {

// G(d): G(0) is empty, G(d) = G(d-1) <d> -R(G(d-1)).
Digits gray_sequence(int d);
// type 1: <d> G(d) <-(d-1)>, type 2: <d-1> G(d) <d>.
Digits gray_extended(int d, int type);
// n-th step of the reflected binary Gray code on d bits, 1 <= n < 2^d.
int gray_function(int d, unsigned long long n);

// Every window of 2^k edges, k = 1..order, uses k+1 axes and stays inside a unit cube.
bool is_hyper_orthogonal(const Digits& s, int order);

enum class EntryClass { Origin, NonOrigin };

struct HilbertRow {
    SignedPermutation perm;
    int type = 0;  // 1 -> H', 2 -> H''; 0 means infer from the exit edge
};

struct HilbertSpec {
    std::string name;
    int d = 3;
    EntryClass entry = EntryClass::Origin;
    std::vector<HilbertRow> rows1;  // production of H'
    std::vector<HilbertRow> rows2;  // production of H''
    int output_type = 2;            // state emitted as the curve
    LevelPower normalizer;
};

// Reference tables, untyped rows left at type 0.
HilbertSpec hilbert_spec_verbatim(int d, EntryClass entry);
// Reference tables with inferred types and the known row correction applied.
HilbertSpec hilbert_spec(int d, EntryClass entry);

// Exit edge of a row: sigma(-(d-1)) for type 1, sigma(d) for type 2.
int hilbert_exit(const HilbertRow& row, int d);
// 0 when neither type matches, 3 when both do.
int infer_type(const SignedPermutation& perm, int exit_edge, int d);
// Fills type-0 rows from the expected exit edges; throws when ambiguous.
void infer_types(HilbertSpec& spec);

struct HilbertTableReport {
    bool row_counts = false;
    bool typed = false;
    bool exits = false;        // exit edges follow G(d) then the state's last digit
    bool chained = false;      // each block enters where the previous one left
    bool geometry = false;     // level-2 states vertex-cover and are (d-2)-hyper-orthogonal
    std::vector<std::string> problems;
    bool ok() const { return row_counts && typed && exits && chained && geometry; }
};

HilbertTableReport validate_hilbert_spec(const HilbertSpec& spec, bool geometric = true);

// Throws std::invalid_argument when validation fails.
SubstitutionSystem hilbert_system(const HilbertSpec& spec);

// Entry vertex of the k-curve; thirds is 1 (x = 1/3) or 2 (x = 2/3).
long long entry_coordinate(int k, int thirds);
std::vector<long long> entry_point(int d, int k, int type, int thirds);

}  // namespace fracseq
