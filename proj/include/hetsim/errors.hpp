#pragma once

#include <stdexcept>

namespace hetsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hetsim
