#pragma once

#include <stdexcept>
#include <string>

namespace faceflow {

// Base class for all errors raised by this library. Every condition named in
// the operation contracts maps to one concrete subclass below, so callers can
// catch either the precise condition or the whole family.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define FACEFLOW_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& what) : Error(what) {}      \
    }

// ingest
FACEFLOW_DEFINE_ERROR(MalformedRow);
FACEFLOW_DEFINE_ERROR(EmptyFile);
FACEFLOW_DEFINE_ERROR(EmptyDataset);

// geometry / flowgen
FACEFLOW_DEFINE_ERROR(DegenerateInput);
FACEFLOW_DEFINE_ERROR(SingularTriangle);
FACEFLOW_DEFINE_ERROR(EmptyCrop);

// flowio
FACEFLOW_DEFINE_ERROR(BadMagic);
FACEFLOW_DEFINE_ERROR(TruncatedFile);
FACEFLOW_DEFINE_ERROR(DimensionMismatch);

// evalmetrics
FACEFLOW_DEFINE_ERROR(EmptyInput);

// filesystem / OS failures that are not contract violations
FACEFLOW_DEFINE_ERROR(IoError);

#undef FACEFLOW_DEFINE_ERROR

} // namespace faceflow
