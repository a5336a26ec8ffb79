#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsl/grid.hpp"
#include "hsl/octonion.hpp"
#include "hsl/quaternion.hpp"

namespace hsl {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Analytic example surface (or frame) with its expected properties. The
// expectation flags are claims to be re-derived by the check pipeline, never
// used as oracles for themselves; `notes` records the analytic justification.
struct CatalogEntry {
    std::string name;
    int dim = 4;              // value dimension: 3 (Im H), 4 (H), 8 (O)
    bool frame_only = false;  // entry supplies a rotor field, not an immersion

    bool conformal = false;
    bool lagrangian = false;
    bool special_lagrangian = false;
    bool hsl = false;
    bool cmc = false;
    bool rho_harmonic = false;

    std::string notes;

    std::function<Eigen::VectorXd(double, double)> eval;  // returns dim entries
    std::function<GridDomain(int)> domain;                // default domain at resolution n

    // Optional closed-form first derivatives. When present they allow exact
    // (rounding-level) conformality and frame data; grid-based consumers fall
    // back to central differences.
    std::function<Eigen::VectorXd(double, double)> eval_dx, eval_dy;
};

const std::vector<std::string>& builtin_names();

// Retrieve a built-in entry; unknown names raise CatalogError listing the
// available entries.
CatalogEntry builtin(const std::string& name);

Field<Eigen::VectorXd> sample_entry(const CatalogEntry& e, int n);

// Conversions between sampled value vectors and the algebra types.
// dim 3 embeds into the imaginary part of H; dim 4 is H; dim 8 is O.
Quaternion to_quaternion(const Eigen::VectorXd& v);
Octonion to_octonion(const Eigen::VectorXd& v);
Field<Quaternion> quaternion_field(const Field<Eigen::VectorXd>& f);
Field<Octonion> octonion_field(const Field<Eigen::VectorXd>& f);

// JSON grid files: {schema, dim, nx, ny, hx, hy, x0, y0, periodic: [bool,bool],
// values: row-major y-fastest flat array of dim-tuples, metadata}.
// save_grid / load_grid round-trip bit-identically on values.
void save_grid(const std::string& path, const Field<Eigen::VectorXd>& f, int dim,
               const std::string& subject = "");
Field<Eigen::VectorXd> load_grid(const std::string& path);

}  // namespace hsl
