#pragma once

#include <stdexcept>
#include <string>

namespace dmn {

// Base of every error raised by the library. Errors raised while loading a
// table carry the offending rule id and/or column name.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  Error(const std::string& what, std::string rule_id, std::string column)
      : std::runtime_error(what), rule_id_(std::move(rule_id)), column_(std::move(column)) {}

  const std::string& rule_id() const noexcept { return rule_id_; }
  const std::string& column() const noexcept { return column_; }

 private:
  std::string rule_id_;
  std::string column_;
};

#define DMN_DEFINE_ERROR(Name)        \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  };

DMN_DEFINE_ERROR(SyntaxError)     // malformed S-FEEL text
DMN_DEFINE_ERROR(TypeError)       // kind mismatch or operator not available for a kind
DMN_DEFINE_ERROR(EvalError)       // arithmetic failure while folding a term
DMN_DEFINE_ERROR(CodecError)      // categorical literal unknown to the codec
DMN_DEFINE_ERROR(SchemaError)     // interchange document does not match the schema
DMN_DEFINE_ERROR(CapacityError)   // brute-force grid above the configured cap
DMN_DEFINE_ERROR(SpecError)       // invalid generator / noise parameters
DMN_DEFINE_ERROR(DimensionError)  // hyper-rectangles of different dimensionality

#undef DMN_DEFINE_ERROR

}  // namespace dmn
