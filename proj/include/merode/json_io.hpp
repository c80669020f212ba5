#pragma once

#include <string>
#include <vector>

#include "merode/types.hpp"

namespace merode {

// Deterministic JSON emitter: insertion-ordered keys, fixed float formatting,
// no locale dependence, so identical inputs produce byte-identical reports.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);

  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value_null();
  JsonWriter& value(Complex v);  // [re, im]

  const std::string& str() const { return out_; }

  static std::string format_double(double v);
  static std::string escape(const std::string& s);

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_;  // per open container: still awaiting first element
  bool pending_key_ = false;
};

}  // namespace merode
