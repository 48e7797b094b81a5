#ifndef ROTW_SURFACE_HPP
#define ROTW_SURFACE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "rotw/generatrix.hpp"

namespace rotw {

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

/// Structured (s, theta) grid of 3-D points obtained by revolving a
/// generatrix about the z-axis:
///   X(s_i, theta_j) = (x(s_i) cos theta_j, x(s_i) sin theta_j, z(s_i)).
/// Row i is the parallel circle at arc sample s_i; theta wraps (closed).
class RevolutionMesh {
  public:
    RevolutionMesh(const GeneratrixCurve& source, int n_theta);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool theta_closed() const { return true; }
    const Vec3& at(std::size_t i, std::size_t j) const { return grid_[i * cols_ + j]; }
    double arc(std::size_t i) const { return arc_[i]; }
    double theta(std::size_t j) const;
    const GeneratrixCurve& source() const { return source_; }

  private:
    std::size_t rows_, cols_;
    std::vector<Vec3> grid_;
    std::vector<double> arc_;
    GeneratrixCurve source_;
};

RevolutionMesh revolve(const GeneratrixCurve& c, int n_theta);

/// Discrete per-vertex principal curvature estimates from the grid alone
/// (central differences for the fundamental forms; the shape operator is
/// diagonal in these coordinates, so the grid directions are principal).
/// Boundary rows use one-sided differences and are flagged low-confidence.
struct MeshCurvature {
    std::size_t rows = 0, cols = 0;
    std::vector<double> k_m_est;       // row-major
    std::vector<double> k_p_est;       // row-major
    std::vector<bool> boundary_row;    // per row

    double k_m(std::size_t i, std::size_t j) const { return k_m_est[i * cols + j]; }
    double k_p(std::size_t i, std::size_t j) const { return k_p_est[i * cols + j]; }
};

MeshCurvature mesh_principal_curvatures(const RevolutionMesh& mesh);

/// Wavefront OBJ: vertices in row-major grid order at 17 significant digits,
/// quad faces (optionally triangulated), seam closed in theta.  Byte output
/// is a pure function of the mesh.
void write_obj(std::ostream& os, const RevolutionMesh& mesh, bool triangulate = false);
void export_obj(const RevolutionMesh& mesh, const std::string& path, bool triangulate = false);

/// CSV rows `i,j,x,y,z,k_m_est,k_p_est`.
void write_mesh_curvature_csv(std::ostream& os, const RevolutionMesh& mesh,
                              const MeshCurvature& mc);

}  // namespace rotw

#endif
