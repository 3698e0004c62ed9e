#pragma once

#include <string>

#include "randlink/method.hpp"

namespace randlink {

/// Self-describing text format: key = value lines, matrices as shape keys
/// plus base64 row-major doubles, trailing FNV-1a checksum line. Written
/// atomically; load(save(m)) reproduces predictions bit-exactly.
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(const std::string& text, const std::string& origin = "<memory>");

} // namespace randlink
