#pragma once

#include <cstdint>
#include <vector>

#include "tmat/sparse_vector.hpp"
#include "tmat/traffic_matrix.hpp"

namespace tmat {

// The aggregate set for one window: packet total, link/source/destination
// uniques, and the per-side maxima. All fields are permutation-invariant, so
// they are identical on raw and anonymized data.
struct WindowSummary {
  Count window_size = 0;      // N_V
  Count valid_packets = 0;    // sum of all entries; equals window_size
  Count unique_links = 0;
  Count max_link_packets = 0;
  Count unique_sources = 0;
  Count max_source_packets = 0;
  Count max_source_fanout = 0;
  Count unique_destinations = 0;
  Count max_destination_packets = 0;
  Count max_destination_fanin = 0;

  friend bool operator==(const WindowSummary&, const WindowSummary&) = default;
};

// Per-entity degree vectors behind the five distribution families.
struct DegreeVectors {
  SparseVector source_packets;       // row sums
  SparseVector source_fanout;        // row supports
  std::vector<Entry> link_packets;   // the triples themselves
  SparseVector destination_packets;  // column sums
  SparseVector destination_fanin;    // column supports
};

// Destination packets follow the summation-notation definition (column sums
// of counts) and fan-in the support counts; an empty matrix yields all zeros.
WindowSummary window_summary(const TrafficMatrix& a);

DegreeVectors degree_vectors(const TrafficMatrix& a);

// Same summary from precomputed vectors, for callers that need both.
WindowSummary window_summary(const TrafficMatrix& a, const DegreeVectors& v);

}  // namespace tmat
