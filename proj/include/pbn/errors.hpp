#pragma once

#include <stdexcept>
#include <string>

namespace pbn {

// Malformed or out-of-contract input data. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative numerics failed to reach tolerance. The CLI maps these to exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

class MalformedRow : public DataError {
public:
    explicit MalformedRow(const std::string& msg) : DataError(msg) {}
};

class NonNumericValue : public DataError {
public:
    explicit NonNumericValue(const std::string& msg) : DataError(msg) {}
};

class NegativeValue : public DataError {
public:
    explicit NegativeValue(const std::string& msg) : DataError(msg) {}
};

class MissingValue : public DataError {
public:
    explicit MissingValue(const std::string& msg) : DataError(msg) {}
};

class DuplicateGeneId : public DataError {
public:
    explicit DuplicateGeneId(const std::string& msg) : DataError(msg) {}
};

class EmptyInput : public DataError {
public:
    explicit EmptyInput(const std::string& msg) : DataError(msg) {}
};

class UnknownGeneId : public DataError {
public:
    explicit UnknownGeneId(const std::string& msg) : DataError(msg) {}
};

class DegenerateRow : public DataError {
public:
    explicit DegenerateRow(const std::string& msg) : DataError(msg) {}
};

class ConstantTarget : public DataError {
public:
    explicit ConstantTarget(const std::string& msg) : DataError(msg) {}
};

class DimensionMismatch : public DataError {
public:
    explicit DimensionMismatch(const std::string& msg) : DataError(msg) {}
};

class KTooLarge : public DataError {
public:
    explicit KTooLarge(const std::string& msg) : DataError(msg) {}
};

class EmptyPredictorList : public DataError {
public:
    explicit EmptyPredictorList(const std::string& msg) : DataError(msg) {}
};

class OddRecordLength : public DataError {
public:
    explicit OddRecordLength(const std::string& msg) : DataError(msg) {}
};

class LengthMismatch : public DataError {
public:
    explicit LengthMismatch(const std::string& msg) : DataError(msg) {}
};

class TooFewSamples : public DataError {
public:
    explicit TooFewSamples(const std::string& msg) : DataError(msg) {}
};

class EmptyHistogram : public DataError {
public:
    explicit EmptyHistogram(const std::string& msg) : DataError(msg) {}
};

class NetworkTooLarge : public DataError {
public:
    explicit NetworkTooLarge(const std::string& msg) : DataError(msg) {}
};

class NotConverged : public ConvergenceError {
public:
    explicit NotConverged(const std::string& msg) : ConvergenceError(msg) {}
};

} // namespace pbn
