#ifndef GTSCEGAR_REPORT_HPP
#define GTSCEGAR_REPORT_HPP

#include "gtscegar/cegar.hpp"

#include <string>

namespace gtscegar {

std::string write_dot(const Graph& g, const std::string& name = "G");
// States are labelled by their literal sets; bottom states by "false".
std::string write_dot(const AbstractTS& ts, const PredicateSet& p, const std::string& name = "TS");

struct ReportOptions {
    // Wall-clock time varies between runs; it is reported as null unless
    // explicitly requested.
    bool includeTiming = false;
};

// Keys are sorted, so equal reports serialize to identical text.
std::string report_json(const VerdictReport& v, const ReportOptions& options = {});

}  // namespace gtscegar

#endif
