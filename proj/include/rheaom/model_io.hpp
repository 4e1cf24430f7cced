#pragma once

#include <stdexcept>
#include <string>

#include "rheaom/opponent_model.hpp"

namespace rheaom {

class ModelIoError : public std::runtime_error {
public:
    enum class Code { CorruptHeader, ShapeMismatch, TruncatedPayload };

    ModelIoError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

// JSON header (kind, F, A, adam_t, created) plus base64 payloads of the raw
// little-endian doubles. Round-trips bit-exactly.
std::string model_to_json(const LinearSoftmaxModel& model);
LinearSoftmaxModel model_from_json(const std::string& text);

void save_model(const LinearSoftmaxModel& model, const std::string& path);
LinearSoftmaxModel load_model(const std::string& path);

}  // namespace rheaom
