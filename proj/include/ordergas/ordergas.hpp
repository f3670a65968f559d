#pragma once

#include "ordergas/errors.hpp"
#include "ordergas/gas.hpp"
#include "ordergas/book.hpp"
#include "ordergas/book_io.hpp"
#include "ordergas/calibration.hpp"
#include "ordergas/pipeline.hpp"
