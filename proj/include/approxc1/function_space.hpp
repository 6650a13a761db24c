#pragma once

#include "approxc1/gluing.hpp"
#include "approxc1/jet.hpp"

#include <Eigen/SparseCore>

#include <array>
#include <memory>
#include <optional>
#include <vector>

namespace approxc1 {

/// Edge functions attached to one side of a patch, in canonical coordinates:
///
///   g(w,t) = b+(t) (b1 + b2)(w) + (h/p) (alpha b- + beta b+')(t) b2(w),
///
/// with b1, b2 the first two B-splines of the patch space in the transversal
/// direction. The trace at w = 0 is b+, and the approximate normal derivative
/// -(1/alpha)(g_w - beta g_t) is -b-.
struct EdgeBasis {
    CanonicalMap map;
    SideGluing gluing;
    SplineSpace plus;
    SplineSpace minus;
    int plus_offset = 0;
    int minus_offset = 0;
};

/// Patch-local building blocks ("atoms"): every tensor B-spline of S(p,r,h)^2,
/// followed by the edge functions of each side that carries edge data.
/// Global basis functions are linear combinations of atoms.
class PatchAtoms {
public:
    PatchAtoms(const Patch& geometry, int p, int r, int n, std::array<std::optional<EdgeBasis>, 4> edges);

    const Patch& geometry() const { return *geometry_; }
    const TensorSplineSpace& space() const { return space_; }
    int elements() const { return n_; }
    int size() const { return size_; }
    int tensor_size() const { return space_.dim(); }
    int tensor_atom(int i1, int i2) const { return space_.index(i1, i2); }
    const std::optional<EdgeBasis>& edge(int side) const { return edges_[side - 1]; }
    int plus_atom(int side, int j) const { return edges_[side - 1]->plus_offset + j; }
    int minus_atom(int side, int j) const { return edges_[side - 1]->minus_offset + j; }

    /// Atoms that do not vanish identically on element (e1, e2).
    const std::vector<int>& element_atoms(int e1, int e2) const { return element_atoms_[e1 + n_ * e2]; }

    /// Jets of element_atoms(e1, e2) at a point of that element.
    void eval_element(int e1, int e2, double u, double v, std::vector<Jet>& out) const;

    /// Jet of a single atom anywhere in the patch.
    Jet eval_atom(int atom, double u, double v) const;

private:
    void fill_edge_jets(int side, double u, double v, const std::vector<int>& atoms, int lo, int hi,
                        std::vector<Jet>& out) const;

    const Patch* geometry_;
    TensorSplineSpace space_;
    int n_;
    int size_;
    std::array<std::optional<EdgeBasis>, 4> edges_;
    std::vector<std::vector<int>> element_atoms_;
    /// Per element: start of each side's edge atoms inside element_atoms (5 entries).
    std::vector<std::array<int, 5>> side_ranges_;
};

enum class Method { ApproxC1, Nitsche };

enum class BcType { Neumann, Laplace };

enum class DofKind { Interior, Interface, BoundaryEdge, Vertex, Tensor };

struct DofInfo {
    DofKind kind = DofKind::Interior;
    /// Patch, interface, boundary edge or vertex index, by kind.
    int owner = 0;
    /// Edge dofs: built from a trace function of S(p,p-1,h).
    bool trace = false;
    bool boundary = false;
};

/// A global space as a sparse map from dofs to patch atoms.
struct DiscreteSpace {
    Method method = Method::ApproxC1;
    int p = 3;
    int r = 2;
    int n = 4;
    std::shared_ptr<const Topology> topology;
    std::vector<PatchAtoms> patches;
    std::vector<int> atom_offset;
    int atom_count = 0;
    /// atom_count x dofs.
    Eigen::SparseMatrix<double> coupling;
    std::vector<DofInfo> dofs;

    int size() const { return static_cast<int>(dofs.size()); }
    double h() const { return 1.0 / n; }
    std::vector<int> free_dofs() const;
    std::vector<int> boundary_dofs() const;
};

/// Boundary condition per boundary edge of the topology.
using BcSpec = std::vector<BcType>;
BcSpec uniform_bc(const Topology& topo, BcType type);

/// Atom coefficients of every patch for a vector of dof coefficients.
Eigen::VectorXd atom_coefficients(const DiscreteSpace& space, const Eigen::VectorXd& dof_coefs);

/// Jet of a patch-local function given by atom coefficients (global numbering).
Jet eval_patch_function(const DiscreteSpace& space, const Eigen::VectorXd& atoms, int patch, double u, double v);

} // namespace approxc1
