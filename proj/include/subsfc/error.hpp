#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace subsfc {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Zero-area, self-intersecting or non-finite polygon.
class DegeneratePolygon : public GeometryError {
 public:
  explicit DegeneratePolygon(const std::string& what) : GeometryError("DegeneratePolygon: " + what) {}
};

/// Malformed input document or dangling reference. `pointer` is a JSON
/// pointer to the offending value when one is known.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& msg, std::string pointer = {})
      : Error(pointer.empty() ? msg : pointer + ": " + msg), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

class UnknownPrototile : public SchemaError {
 public:
  explicit UnknownPrototile(const std::string& id) : SchemaError("unknown prototile '" + id + "'") {}
};

class MissingOrder : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Predicted work exceeds the configured tile cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class DegenerateRegion : public Error {
 public:
  using Error::Error;
};

class ResolutionTooCoarse : public Error {
 public:
  using Error::Error;
};

/// One or more hypotheses of the dense-set construction fail.
class ConditionsUnmet : public Error {
 public:
  using Error::Error;
};

}  // namespace subsfc
