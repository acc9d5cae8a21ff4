// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/protocol.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tmap
{
/// K-points of a descended variety in descent coordinates. Each point imposes
/// d linear conditions over k on a vanishing polynomial.
struct SampleSet
{
    std::vector<std::vector<Fe>> points;
    std::vector<std::string> log;
};

struct HarvestStats
{
    size_t requested = 0;
    size_t steps = 0;
    size_t distinct = 0;
    size_t chart_points = 0;
    size_t torsion_checked = 0;
    size_t torsion_ok = 0;
};

/// Random walk from D_beta through the published group law and phi_i.
/// Point 0 is always D_beta.
std::vector<DescentPoint> harvest(const PublicEvaluator& ev, const PublicParams& pp, size_t count,
                                  uint64_t seed, HarvestStats* stats = nullptr);
/// Harvested points on the affine chart deg a = 2, in chart coordinates
/// (a1, a0, b1, b0), one block of d values each.
SampleSet harvest_chart(const PublicEvaluator& ev, const PublicParams& pp, size_t count, uint64_t seed,
                        HarvestStats* stats = nullptr);

/// Monomials in the descended variables that can appear in the descent of a
/// polynomial supported on S (over n K-variables).
std::vector<Monomial> hat_support(const std::vector<Monomial>& S, size_t d);
std::vector<Monomial> support_of(const std::vector<MultiPoly>& polys);

struct LinearSpace
{
    std::vector<Monomial> columns;
    std::vector<Vec> basis;  // coefficient vectors indexed like columns
    bool overfit = false;    // fewer samples than columns
};

/// k-polynomials supported on columns vanishing on every sample.
LinearSpace build_L_hat(const ExtensionField& K, const std::vector<Monomial>& columns, const SampleSet& samples);
MultiPoly space_element(const LinearSpace& L, size_t i, size_t nvars);

struct AttackReport
{
    std::string attack;
    bool applicable = false;
    std::map<std::string, size_t> dims;
    bool recovered = false;
    std::string details;
    std::optional<Basis> basis;
    DescentTuple tuple;
};

/// Measures the dimension conditions from samples, extracts the descent rows
/// and hands them to recover_basis_from_descent.
AttackReport linear_term_attack(const ExtensionField& K, const SampleSet& samples,
                                const std::vector<Monomial>& S_prime, size_t target_var, size_t nvars,
                                uint64_t seed);

/// True when b is c * sigma^s(planted) for some c in K and s.
bool matches_up_to_conjugate_scalar(const ExtensionField& K, const Basis& b, const Basis& planted);

struct ToyInstance
{
    std::string name;
    Basis planted;
    std::vector<MultiPoly> equations;  // over K
    SampleSet samples;
    std::vector<Monomial> S_prime;
    size_t target_var = 0;
    size_t nvars = 0;
};

/// V = Z(x1 + c2 x2 + c3 x3) with c2 generating K.
ToyInstance hyperplane_toy(const ExtensionField& K, uint64_t seed);
/// V = Z(y^2 - x^3 - c x - e), target x.
ToyInstance cubic_toy(const ExtensionField& K, uint64_t seed);
/// The shipped genus-2 chart: support of both chart equations, target a1.
ToyInstance genus2_instance(const PublicEvaluator& ev, const PublicParams& pp, const Basis& planted,
                            uint64_t seed);

AttackReport run_toy(const ExtensionField& K, const ToyInstance& toy, uint64_t seed);

struct ScanFinding
{
    size_t trial = 0;
    size_t tuple = 0;
    Mat gamma;
    Monomial key;
    Fe coeff;
};

struct ScanReport
{
    size_t trials = 0;
    std::vector<ScanFinding> hits;
};

/// Tries each tuple as is and then `combos` random Gamma in GL_d(k) applied to
/// random tuples, checking every block against the table.
ScanReport global_descent_scan(const ExtensionField& K, const std::vector<DescentTuple>& space,
                               const DescentTable& tab, size_t combos, uint64_t seed);

/// Solving the descent-table system for an unknown basis is not automated:
/// this returns the unknown and equation counts of that system for reporting.
std::pair<size_t, size_t> descent_table_system_size(size_t d);
}  // namespace tmap
