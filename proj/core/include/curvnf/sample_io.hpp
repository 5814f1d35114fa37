#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "curvnf/sample.hpp"

namespace curvnf {

/// One JSON object per line:
///   {"dim":4,"g":[lower triangle, row-major],"h":[...],"T":[...],
///    "rm":[[i,j,k,l,v],...],"weight":w,"coords":[...]}
/// with 1-based canonical rm indices and 17 significant digits.
std::string sample_to_json(const PointSample& sample);

/// Parses one line; `line_no` only appears in kFormat messages.
PointSample sample_from_json(const std::string& line, long line_no = 0);

/// Streams samples from a plain or gzip file (detected from the content, so
/// a ".gz" name is not required). Blank lines are skipped.
void read_samples(const std::string& path,
                  const std::function<void(PointSample&&)>& sink);
std::vector<PointSample> read_samples(const std::string& path);

/// Line writer; gzip-compresses when the path ends in ".gz". "-" is stdout.
class SampleWriter {
 public:
  explicit SampleWriter(const std::string& path);
  ~SampleWriter();
  SampleWriter(const SampleWriter&) = delete;
  SampleWriter& operator=(const SampleWriter&) = delete;

  void write(const PointSample& sample);
  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

void write_samples(const std::string& path,
                   const std::vector<PointSample>& samples);

}  // namespace curvnf
