#ifndef RQN_HARNESS_IO_H_
#define RQN_HARNESS_IO_H_

#include <filesystem>
#include <vector>

#include "rqn/harness/metrics.h"
#include "rqn/harness/reconstruction.h"
#include "rqn/nn/tensor.h"

namespace rqn::harness {

namespace fs = std::filesystem;

// CSV files use '\n' line endings and shortest round-trip number formatting,
// so identical runs produce identical bytes.
void write_metrics_csv(const fs::path& path, const std::vector<EvalRecord>& evals);
std::vector<EvalRecord> read_metrics_csv(const fs::path& path);
void write_phi_csv(const fs::path& path, const std::vector<PhiSnapshot>& trace);
std::vector<PhiSnapshot> read_phi_csv(const fs::path& path);
void write_reconstruction_csv(const fs::path& path, const ReconstructionTable& table);
void write_aggregate_csv(const fs::path& path, const std::vector<int>& episodes, const SeedAggregate& agg);

// Parameters as JSON: {name: {rows, cols, data}}. Values round-trip exactly.
void save_parameters(const fs::path& path, const std::vector<nn::Parameter*>& params);
// Overwrites each parameter from the file; throws on missing names or shape
// mismatches.
void load_parameters(const fs::path& path, const std::vector<nn::Parameter*>& params);

std::string format_double(double v);

}  // namespace rqn::harness

#endif  // RQN_HARNESS_IO_H_
