#include "qrf/geometry.hpp"

#include <algorithm>

namespace qrf {

FrameBundleModel::FrameBundleModel(BundlePtr bundle, SubgroupInclusion little,
                                   LocalSection reference)
    : bundle_(std::move(bundle)),
      little_(std::move(little)),
      reference_(std::move(reference)) {
  if (little_.parent() != bundle_->group()) {
    throw Error("FrameBundleModel: little group must include into the "
                "bundle group");
  }
  if (reference_.bundle() != bundle_) {
    throw Error("FrameBundleModel: reference section on a different bundle");
  }
  if (static_cast<int>(reference_.domain().size()) != bundle_->base_size()) {
    throw Error("FrameBundleModel: reference trivialization must be global");
  }
  // Left-coset table of the little group image.
  const auto& big = *bundle_->group();
  coset_of_.assign(big.order(), -1);
  num_sectors_ = 0;
  for (int g = 0; g < big.order(); ++g) {
    if (coset_of_[g] >= 0) continue;
    for (int h = 0; h < little_.sub()->order(); ++h) {
      coset_of_[big.op(g, little_.embed(h))] = num_sectors_;
    }
    ++num_sectors_;
  }
}

int FrameBundleModel::fiber_coordinate(int b) const {
  const int anchor = reference_.at(bundle_->proj(b));
  for (int g = 0; g < bundle_->group()->order(); ++g) {
    if (bundle_->act(anchor, g) == b) return g;
  }
  throw Error("FrameBundleModel: fiber coordinate not found");
}

std::vector<std::vector<int>> FrameBundleModel::stratify(int p) const {
  std::vector<std::vector<int>> sectors(num_sectors_);
  for (int b : bundle_->fiber(p)) sectors[sector_of(b)].push_back(b);
  return sectors;
}

MetricAssignment metric_from_section(const FrameBundleModel& model,
                                     const LocalSection& section) {
  if (section.bundle() != model.bundle()) {
    throw Error("metric_from_section: section on a different bundle");
  }
  MetricAssignment out;
  for (int p : section.domain()) {
    out.sector_per_point[p] = model.sector_of(section.at(p));
  }
  for (const auto& [p, sector] : out.sector_per_point) {
    for (int b : model.bundle()->fiber(p)) {
      if (model.sector_of(b) == sector) out.subbundle_points.push_back(b);
    }
  }
  std::sort(out.subbundle_points.begin(), out.subbundle_points.end());
  return out;
}

GeometryDistribution indefinite_geometry_probabilities(
    const FrameBundleModel& model, const BundleFrame& frame,
    const State& omega) {
  if (frame.bundle() != model.bundle()) {
    throw Error("indefinite_geometry_probabilities: frame on another bundle");
  }
  const Eigen::VectorXd mu = born_measure(frame.observable(), omega);
  std::vector<int> points = frame.section().domain();
  std::sort(points.begin(), points.end());
  const int np = static_cast<int>(points.size());
  const int ns = model.num_sectors();
  // Mass of each (base point, sector) cell.
  std::map<std::pair<int, int>, double> cell;
  for (size_t i = 0; i < frame.region().size(); ++i) {
    const int b = frame.region()[i];
    cell[{model.bundle()->proj(b), model.sector_of(b)}] +=
        mu(static_cast<int>(i));
  }
  GeometryDistribution dist;
  long total = 1;
  for (int i = 0; i < np; ++i) total *= ns;
  dist.probabilities.resize(total);
  for (long code = 0; code < total; ++code) {
    std::vector<int> assignment(np);
    long rest = code;
    for (int i = 0; i < np; ++i) {
      assignment[i] = static_cast<int>(rest % ns);
      rest /= ns;
    }
    // Born mass of the assignment's sub-bundle: every region point whose
    // sector agrees with the assignment at its base point.
    double prob = 0.0;
    for (int i = 0; i < np; ++i) {
      prob += cell.count({points[i], assignment[i]})
                  ? cell[{points[i], assignment[i]}]
                  : 0.0;
    }
    dist.probabilities(code) = prob;
    dist.assignments.push_back(std::move(assignment));
  }
  // Normalize: summing raw sub-bundle masses over all assignments counts
  // every cell ns^(np-1) times.
  double scale = 1.0;
  for (int i = 0; i < np - 1; ++i) scale /= ns;
  dist.probabilities *= scale;
  return dist;
}

double reduced_vs_full_residual(const FrameBundleModel& model,
                                const BundleFrame& frame,
                                const QuantumField& field, const State& omega,
                                double tol) {
  const MetricAssignment metric = metric_from_section(model, frame.section());
  const Eigen::VectorXd mu = born_measure(frame.observable(), omega);
  double off_mass = 0.0;
  for (size_t i = 0; i < frame.region().size(); ++i) {
    const int b = frame.region()[i];
    if (!std::binary_search(metric.subbundle_points.begin(),
                            metric.subbundle_points.end(), b)) {
      off_mass += mu(static_cast<int>(i));
    }
  }
  if (off_mass > tol) {
    throw PreconditionError(
        "reduced_vs_full: state not supported on the section's sub-bundle, "
        "off-support mass " +
        std::to_string(off_mass));
  }
  // Full computation in the big-group model.
  const Matrix full = restrict_field(field, frame, omega);
  // Reduced computation: orientations searched inside the little group only.
  const auto& bundle = *model.bundle();
  Matrix reduced = Matrix::Zero(field.dim(), field.dim());
  for (int b : metric.subbundle_points) {
    const int p = bundle.proj(b);
    const int target = frame.section().at(p);
    int found = -1;
    for (int h = 0; h < model.little().sub()->order(); ++h) {
      if (bundle.act(b, model.little().embed(h)) == target) {
        found = model.little().embed(h);
        break;
      }
    }
    if (found < 0) {
      throw Error("reduced_vs_full: sub-bundle point not alignable within "
                  "the little group");
    }
    reduced += mu(frame.region_index(b)) *
               field.sys_rep().act_on_operator(
                   field.value(p), bundle.group()->inverse(found));
  }
  return spectral_norm(full - reduced);
}

Matrix path_restricted_observable(
    const PathFrame& pf, const FrameBundleModel& model,
    const LocalSection& section, const QuantumField& field, const State& omega,
    PathVariant variant, const std::optional<SubgroupInclusion>& stationary) {
  const Eigen::VectorXd mu = born_measure(pf.povm, omega);
  const int steps = static_cast<int>(pf.path.size());
  Matrix out = Matrix::Zero(field.dim(), field.dim());
  switch (variant) {
    case PathVariant::kOnSection: {
      if (mu.size() != steps) {
        throw Error("path_restricted_observable: POVM must live on the path");
      }
      for (int t = 0; t < steps; ++t) out += mu(t) * field.value(pf.path[t]);
      return out;
    }
    case PathVariant::kLifted: {
      if (!pf.lift) {
        throw Error("path_restricted_observable: variant requires a lift");
      }
      if (mu.size() != steps) {
        throw Error("path_restricted_observable: POVM must live on the path");
      }
      for (int t = 0; t < steps; ++t) {
        const int b = (*pf.lift)[t];
        if (model.bundle()->proj(b) != pf.path[t]) {
          throw Error("path_restricted_observable: lift does not cover path");
        }
        const int lam = model.bundle()->group()->inverse(
            orientation(*model.bundle(), section, b));
        out += mu(t) * field.sys_rep().act_on_operator(field.value(pf.path[t]), lam);
      }
      return out;
    }
    case PathVariant::kIndefiniteOrientation:
    case PathVariant::kStationarySubgroup: {
      // Orientation indices run over the little group (or its designated
      // stationary subgroup), sample space ordered as t·|K| + k.
      std::vector<int> orient;
      if (variant == PathVariant::kStationarySubgroup) {
        if (!stationary) {
          throw Error(
              "path_restricted_observable: stationary variant needs a "
              "subgroup");
        }
        if (stationary->parent() != model.little().sub()) {
          throw Error(
              "path_restricted_observable: stationary subgroup must sit "
              "inside the little group");
        }
        for (int k = 0; k < stationary->sub()->order(); ++k) {
          orient.push_back(model.little().embed(stationary->embed(k)));
        }
      } else {
        for (int h = 0; h < model.little().sub()->order(); ++h) {
          orient.push_back(model.little().embed(h));
        }
      }
      const int nk = static_cast<int>(orient.size());
      if (mu.size() != steps * nk) {
        throw Error(
            "path_restricted_observable: POVM must live on path × "
            "orientations");
      }
      for (int t = 0; t < steps; ++t) {
        for (int k = 0; k < nk; ++k) {
          out += mu(t * nk + k) * field.sys_rep().act_on_operator(
                                      field.value(pf.path[t]), orient[k]);
        }
      }
      return out;
    }
  }
  throw Error("path_restricted_observable: unknown variant");
}

IsometryReport isometric_frame_transform(const FrameMorphism& m,
                                         const FrameBundleModel& model,
                                         const BundleFrame& from,
                                         const BundleFrame& to,
                                         const QuantumField& field,
                                         double tol) {
  verify_frame_morphism(m, from, to, tol);
  const MetricAssignment source = metric_from_section(model, from.section());
  const MetricAssignment target = metric_from_section(model, to.section());
  IsometryReport report;
  report.isometry = true;
  for (int b : source.subbundle_points) {
    const int image = m.theta(b);
    const int q = model.bundle()->proj(image);
    if (model.sector_of(image) != target.sector_per_point.at(q)) {
      report.isometry = false;
      break;
    }
  }
  report.residual = frame_morphism_residual(field, m, from, to, tol);
  return report;
}

Matrix gr_coupled_relativize(
    const FrameBundleModel& model, const BundleFrame& frame,
    const QuantumField& field,
    const std::map<int, DifferenceOperator>& sector_equations, double tol) {
  std::vector<int> points = frame.section().domain();
  std::sort(points.begin(), points.end());
  // Field restricted to the section domain, as a scalar-grid operator field.
  std::vector<Matrix> values;
  values.reserve(points.size());
  for (int p : points) values.push_back(field.value(p));
  const OperatorField field_on_domain(
      SampleSpace::indexed(static_cast<int>(points.size())), std::move(values));
  // Decide per sector whether the field solves that sector's equation.
  std::map<int, bool> solves;
  for (size_t i = 0; i < frame.region().size(); ++i) {
    const int sector = model.sector_of(frame.region()[i]);
    if (solves.count(sector)) continue;
    auto it = sector_equations.find(sector);
    if (it == sector_equations.end()) {
      throw Error("gr_coupled_relativize: no equation for sector " +
                  std::to_string(sector));
    }
    solves[sector] = kernel_membership(it->second, field_on_domain, tol).member;
  }
  const int dim = field.dim() * frame.dim();
  Matrix out = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < frame.region().size(); ++i) {
    const int b = frame.region()[i];
    if (!solves[model.sector_of(b)]) continue;
    const int w = frame.bundle()->group()->inverse(
        orientation(*frame.bundle(), frame.section(), b));
    out += tensor(
        field.sys_rep().act_on_operator(field.value(frame.bundle()->proj(b)), w),
        frame.observable().effect(static_cast<int>(i)));
  }
  return out;
}

}  // namespace qrf
