#pragma once

#include <stdexcept>
#include <string>

namespace wlab {

// All failures carry a stable machine-readable code (used by the CLI's
// `code:` stderr prefix) plus a human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct NonRegular : Error {
  explicit NonRegular(const std::string& msg) : Error("NonRegular", msg) {}
};
struct NotOnSphere : Error {
  explicit NotOnSphere(const std::string& msg) : Error("NotOnSphere", msg) {}
};
struct NotUnitSpeed : Error {
  explicit NotUnitSpeed(const std::string& msg) : Error("NotUnitSpeed", msg) {}
};
struct DegenerateFrame : Error {
  explicit DegenerateFrame(const std::string& msg) : Error("DegenerateFrame", msg) {}
};
struct DegenerateMetric : Error {
  explicit DegenerateMetric(const std::string& msg) : Error("DegenerateMetric", msg) {}
};
struct NotFlatConformal : Error {
  explicit NotFlatConformal(const std::string& msg) : Error("NotFlatConformal", msg) {}
};
struct SingularPinch : Error {
  explicit SingularPinch(const std::string& msg) : Error("SingularPinch", msg) {}
};
struct FrameDrift : Error {
  explicit FrameDrift(const std::string& msg) : Error("FrameDrift", msg) {}
};
struct NoConvergence : Error {
  explicit NoConvergence(const std::string& msg) : Error("NoConvergence", msg) {}
};
struct BadParams : Error {
  explicit BadParams(const std::string& msg) : Error("BadParams", msg) {}
};
struct OutOfRange : Error {
  explicit OutOfRange(const std::string& msg) : Error("OutOfRange", msg) {}
};
struct IoError : Error {
  explicit IoError(const std::string& msg) : Error("IoError", msg) {}
};

}  // namespace wlab
