#pragma once

#include "bq/bq.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testing_support {

inline std::string corpus_path(const std::string& name) { return std::string(BQ_CORPUS_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bq::InputDocument load(const std::string& name) { return bq::parse_document(read_file(corpus_path(name))); }

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(BQ_CORPUS_DIR))
    if (e.path().extension() == ".bq") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
bq::PresentedAlgebra<F> build(const std::string& name, const F& f) {
  return bq::build_algebra(load(name), f);
}

/// Element from an arrow-name word such as {"x", "y"}.
template <class F>
bq::AlgebraElement<F> word(const F& f, const bq::Quiver& q, const std::vector<std::string>& names) {
  std::vector<bq::ArrowId> as;
  for (const auto& n : names) as.push_back(*q.find_arrow(n));
  return bq::AlgebraElement<F>::from_path(f, bq::make_path(q, q.arrow(as.front()).source, as));
}

template <class F>
bq::PathWord path(const bq::Quiver& q, const std::vector<std::string>& names) {
  std::vector<bq::ArrowId> as;
  for (const auto& n : names) as.push_back(*q.find_arrow(n));
  return bq::make_path(q, q.arrow(as.front()).source, as);
}

}  // namespace testing_support
