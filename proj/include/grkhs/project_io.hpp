#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "grkhs/groupoid.hpp"
#include "grkhs/kernel.hpp"
#include "grkhs/representation.hpp"
#include "grkhs/types.hpp"

namespace grkhs {

template <typename T>
struct Named {
  std::string id;
  T value;
};

/// In-memory form of a project file: an optional groupoid plus labeled
/// representations, vector fields, Haar systems and kernels over it.
struct Project {
  int format_version = 1;
  GroupoidPtr groupoid;
  std::vector<Named<UnitaryRepresentation>> representations;
  std::vector<Named<VectorField>> vector_fields;
  std::vector<Named<HaarSystem>> haar_systems;
  std::vector<Named<GroupoidKernel>> kernels;

  const UnitaryRepresentation* find_representation(const std::string& id) const;
  const VectorField* find_vector_field(const std::string& id) const;
  const HaarSystem* find_haar(const std::string& id) const;
  const GroupoidKernel* find_kernel(const std::string& id) const;
};

/// Schema violations throw StructuralError with a JSON-pointer-style path;
/// groupoid axiom failures throw Error. Shapes are checked on load;
/// semantic checks (unitarity, Haar invariance, PSD) are separate.
Project load_project(const std::filesystem::path& path);
Project load_project_from_string(const std::string& text);

/// Canonical serialization: sorted keys, floats at 17 significant digits,
/// no whitespace. save(load(p)) is byte-identical for canonicalized input.
std::string project_to_string(const Project& project);
void save_project(const std::filesystem::path& path, const Project& project);

/// Structural parse of the groupoid section alone, without the axiom scan,
/// so invalid candidates can be fed to validate_groupoid for a report.
GroupoidData load_groupoid_data(const std::filesystem::path& path);

}  // namespace grkhs
