#pragma once

#include <rejsched/core/types.hpp>

#include <optional>
#include <string_view>

namespace rejsched {

enum class ModelKind { PoissonPareto, Uniform, AdversarialL, Fixed };

[[nodiscard]] std::string_view to_string(ModelKind kind) noexcept;
/// Throws BadParameters for an unknown name.
[[nodiscard]] ModelKind parse_model_kind(std::string_view name);

/// Parameters of a synthetic workload. Unused fields are ignored by a model.
///
/// poisson_pareto: Poisson arrivals at `arrival_rate` per slot, Pareto sizes
///                 (`pareto_shape`, `pareto_scale`) rounded up and capped at `max_size`.
/// uniform:        releases uniform in [0, horizon), sizes uniform in [1, max_size].
/// adversarial_L:  one job of size L^2 * scale at 0, then L unit jobs at 1..L.
/// fixed:          n unit-weight jobs of size `max_size`, released at 0, 1, ..., n-1.
///
/// Weights of the random models are k / d with k uniform in [1, max_weight]
/// and d uniform in {1, 2, 4}. On m > 1 machines each job's size on a machine
/// is its base size times a factor in {1, 2, 3}, and a machine is missing
/// with probability `missing` (one machine always stays).
struct WorkloadModel {
    ModelKind kind = ModelKind::PoissonPareto;
    std::size_t n = 20;
    double arrival_rate = 0.5;
    double pareto_shape = 1.5;
    double pareto_scale = 1.0;
    std::int64_t max_size = 16;
    std::int64_t max_weight = 8;
    Time horizon = 100;
    std::int64_t L = 10;
    std::int64_t scale = 1;
    std::size_t machines = 1;
    double missing = 0.0;
    Rational epsilon{1, 2};
    std::uint64_t seed = 0;
};

struct Workload {
    Instance instance;
    std::uint64_t seed = 0;
    /// adversarial_L only: slots per unit of the unscaled construction,
    /// in which the short jobs have size 1 / (L^2 scale).
    std::optional<std::int64_t> time_scale;
};

/// Deterministic in the model (including the seed). Throws BadParameters.
[[nodiscard]] Workload generate(const WorkloadModel& model);

}  // namespace rejsched
