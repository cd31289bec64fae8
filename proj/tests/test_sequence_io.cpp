#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "cftrack/sequence_io.hpp"

using namespace cftrack;
namespace fs = std::filesystem;

namespace {

struct TempDir
{
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("cftrack_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Frame gradient_frame(int w, int h, int index)
{
    Image img(h, w);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            img(r, c) = double((r * 7 + c * 3) % 256) / 255.0;
    return Frame(img, index);
}

}  // namespace

TEST(ParseBox, CommaAndWhitespaceAreOneIndexed)
{
    EXPECT_EQ(parse_box("10,20,30,40"), (BoundingBox{9, 19, 30, 40}));
    EXPECT_EQ(parse_box("10\t20\t30\t40"), parse_box("10,20,30,40"));
    EXPECT_EQ(parse_box(" 10 20  30 40 "), parse_box("10,20,30,40"));
    EXPECT_EQ(parse_box("1.5,2.5,3,4"), (BoundingBox{0.5, 1.5, 3, 4}));
}

TEST(ParseBox, Malformed)
{
    EXPECT_THROW(parse_box("1,2,3"), ParseError);
    EXPECT_THROW(parse_box("1,2,3,4,5"), ParseError);
    EXPECT_THROW(parse_box("1,2,x,4"), ParseError);
}

TEST(GroundTruth, ReportsTheLineNumber)
{
    std::istringstream in("1,1,10,10\n2,2,10,10\n3,3,ten,10\n");
    try {
        parse_ground_truth(in);
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("ground truth line 3:", 0), 0u) << e.what();
    }
}

TEST(GroundTruth, ZeroAreaAndNanRowsAreAbsent)
{
    std::istringstream in("1,1,10,10\n0,0,0,0\nNaN,NaN,NaN,NaN\n\n5 5 8 8\n");
    const auto gt = parse_ground_truth(in);
    ASSERT_EQ(gt.size(), 4u);
    EXPECT_EQ(*gt[0], (BoundingBox{0, 0, 10, 10}));
    EXPECT_FALSE(gt[1]);
    EXPECT_FALSE(gt[2]);
    EXPECT_EQ(*gt[3], (BoundingBox{4, 4, 8, 8}));
}

TEST(GroundTruth, WriteThenParseRoundTrips)
{
    const std::vector<BoundingBox> boxes{{0, 0, 10, 10}, {12.25, 7.5, 30.125, 4}};
    std::stringstream io;
    write_ground_truth(io, boxes);
    const auto back = parse_ground_truth(io);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(*back[0], boxes[0]);
    EXPECT_NEAR(back[1]->x, boxes[1].x, 1e-4);
    EXPECT_NEAR(back[1]->w, boxes[1].w, 1e-4);
}

TEST(ImageSequence, NumericOrderAndGrayscaleRoundTrip)
{
    TempDir dir;
    for (int i : {10, 2, 1})
        write_frame(dir.path / (std::to_string(i) + ".png"), gradient_frame(20, 12, i));
    std::ofstream(dir.path / "notes.txt") << "ignored";

    const ImageSequence seq(dir.path);
    ASSERT_EQ(seq.size(), 3u);
    EXPECT_EQ(seq.path(0).filename(), "1.png");
    EXPECT_EQ(seq.path(1).filename(), "2.png");
    EXPECT_EQ(seq.path(2).filename(), "10.png");

    const Frame f = seq.load(2);
    EXPECT_EQ(f.index, 3);
    EXPECT_EQ(f.width(), 20);
    EXPECT_EQ(f.height(), 12);
    EXPECT_LT((f.intensity - gradient_frame(20, 12, 1).intensity).abs().maxCoeff(), 0.5 / 255.0 + 1e-12);
}

TEST(ImageSequence, ColorUsesLumaWeights)
{
    TempDir dir;
    cv::Mat bgr(4, 5, CV_8UC3, cv::Scalar(30, 200, 90));  // B, G, R
    cv::imwrite((dir.path / "0001.png").string(), bgr);
    const Frame f = read_frame(dir.path / "0001.png", 1);
    const double expected = (0.299 * 90 + 0.587 * 200 + 0.114 * 30) / 255.0;
    EXPECT_NEAR(f.intensity(2, 3), expected, 1e-6);
}

TEST(ImageSequence, MissingOrEmptyDirectory)
{
    TempDir dir;
    EXPECT_THROW(ImageSequence(dir.path), IoError);
    EXPECT_THROW(ImageSequence(dir.path / "absent"), IoError);
    EXPECT_THROW(read_frame(dir.path / "absent.png", 1), IoError);
}

TEST(Results, RowFormatAndReload)
{
    TempDir dir;
    const fs::path file = dir.path / "r.csv";
    {
        std::ofstream out(file);
        write_results_header(out, true);
        write_result_row(out, 1, {{9, 19, 30, 40}, 0.5, 12.25, TrackingCondition::Confident, Stream::Scale}, 0.75);
        write_result_row(out, 2, {{0, 0, 1, 2}, 0.1, 1.0, TrackingCondition::Failure, Stream::Redetect}, 0.0);
    }
    std::ifstream in(file);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, "frame_index,x,y,w,h,peak,apsr,condition,stream,iou");
    EXPECT_EQ(row, "1,10.0000,20.0000,30.0000,40.0000,0.500000,12.250000,Confident,Scale,0.750000");

    const auto boxes = load_results(file);
    ASSERT_EQ(boxes.size(), 2u);
    EXPECT_EQ(boxes[0], (BoundingBox{9, 19, 30, 40}));
    EXPECT_EQ(boxes[1], (BoundingBox{0, 0, 1, 2}));
}

TEST(Overlay, WritesAReadableImage)
{
    TempDir dir;
    write_overlay(dir.path / "o.png", gradient_frame(40, 30, 1), {5, 5, 10, 10});
    const cv::Mat img = cv::imread((dir.path / "o.png").string(), cv::IMREAD_COLOR);
    ASSERT_FALSE(img.empty());
    EXPECT_EQ(img.cols, 40);
    const cv::Vec3b edge = img.at<cv::Vec3b>(5, 10);
    EXPECT_EQ(edge[2], 255);
    EXPECT_EQ(edge[1], 0);
}
