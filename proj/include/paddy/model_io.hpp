#pragma once

// Versioned plain-text model files.
//
//   paddy-model 1
//   kind et0|moisture
//   topology <n_inputs> <n_hidden> <n_outputs>
//   lag <k>                      (moisture only)
//   gain <g>
//   normalizer <name> <lo> <hi>  (one per input/output variable)
//   seed <u64>
//   epochs <n>
//   digest <16 hex digits>
//   hidden <rows> <cols>
//   w <cols values>              (one line per row)
//   output <rows> <cols>
//   w <cols values>
//   end
//
// Numbers are written in shortest round-trip form so that a loaded model
// predicts bit-identically to the saved one.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paddy/ann.hpp"
#include "paddy/evapo.hpp"
#include "paddy/moisture.hpp"

namespace paddy {

inline constexpr int kModelFormatVersion = 1;

enum class ModelKind { Et0, Moisture };

struct Provenance {
  std::uint64_t seed = 0;
  int epochs = 0;
  std::uint64_t data_digest = 0;

  bool operator==(const Provenance&) const = default;
};

struct ModelArtifact {
  int version = kModelFormatVersion;
  ModelKind kind = ModelKind::Et0;
  Mlp net{MlpTopology{3, 8, 1}};
  int lag = 0;
  std::vector<std::pair<std::string, Normalizer>> normalizers;
  Provenance provenance;

  bool operator==(const ModelArtifact&) const = default;
};

ModelArtifact to_artifact(const Et0Model& m, const Provenance& prov);
ModelArtifact to_artifact(const MoistureModel& m, const Provenance& prov);
/// Throws InvalidArgument when the artifact holds a different kind.
Et0Model et0_model_from(const ModelArtifact& a);
MoistureModel moisture_model_from(const ModelArtifact& a);

void save_model(const ModelArtifact& m, std::ostream& out);
void save_model(const ModelArtifact& m, const std::filesystem::path& path);
/// Parse errors carry the line number; unknown versions raise Version.
ModelArtifact load_model(std::istream& in, const std::string& source = "<stream>");
ModelArtifact load_model(const std::filesystem::path& path);

/// FNV-1a over the exact bytes of the training patterns.
std::uint64_t pattern_digest(std::span<const Pattern> patterns);

}  // namespace paddy
