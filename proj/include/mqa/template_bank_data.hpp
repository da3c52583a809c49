#pragma once

#include <string_view>

namespace mqa {

// Default paraphrase bank, five curated patterns per variant. The same
// content ships as data/template_bank.json for users to copy and extend;
// a unit test keeps the two in sync.
inline constexpr std::string_view kBuiltinTemplateBankJson = R"mqa_bank({
  "version": 1,
  "templates": [
    {
      "family": "presence",
      "variant": "presence_yes",
      "question": "Are there any {categories} in the scene?",
      "answer": "<ans>Yes</ans>, there are {categories} present in the scene around the ego vehicle."
    },
    {
      "family": "presence",
      "variant": "presence_yes",
      "question": "Is there at least one {category} around the ego vehicle?",
      "answer": "<ans>Yes</ans>, at least one {category} can be found in the current driving scene."
    },
    {
      "family": "presence",
      "variant": "presence_yes",
      "question": "Can you see any {categories} nearby?",
      "answer": "<ans>Yes</ans>, some {categories} are visible in the surroundings of the ego vehicle."
    },
    {
      "family": "presence",
      "variant": "presence_yes",
      "question": "Does the current scene contain any {categories}?",
      "answer": "<ans>Yes</ans>, the scene does contain {categories} among the detected objects."
    },
    {
      "family": "presence",
      "variant": "presence_yes",
      "question": "Are {categories} present in the camera views?",
      "answer": "<ans>Yes</ans>, {categories} are present in the area covered by the cameras."
    },
    {
      "family": "presence",
      "variant": "presence_no",
      "question": "Are there any {categories} in the scene?",
      "answer": "<ans>No</ans>, there are no {categories} present in the scene around the ego vehicle."
    },
    {
      "family": "presence",
      "variant": "presence_no",
      "question": "Is there at least one {category} around the ego vehicle?",
      "answer": "<ans>No</ans>, not a single {category} can be found in the current driving scene."
    },
    {
      "family": "presence",
      "variant": "presence_no",
      "question": "Can you see any {categories} nearby?",
      "answer": "<ans>No</ans>, no {categories} are visible in the surroundings of the ego vehicle."
    },
    {
      "family": "presence",
      "variant": "presence_no",
      "question": "Does the current scene contain any {categories}?",
      "answer": "<ans>No</ans>, the scene does not contain any {categories} among the detected objects."
    },
    {
      "family": "presence",
      "variant": "presence_no",
      "question": "Are {categories} present in the camera views?",
      "answer": "<ans>No</ans>, {categories} are absent from the area covered by the cameras."
    },
    {
      "family": "presence",
      "variant": "presence_count",
      "question": "How many {categories} are there in the scene?",
      "answer": "The scene around the ego vehicle contains <target><cnt>{count}</cnt> <obj>{objects}</obj></target> in total."
    },
    {
      "family": "presence",
      "variant": "presence_count",
      "question": "Count the {categories} around the ego vehicle.",
      "answer": "Counting the detections, <target><cnt>{count}</cnt> <obj>{objects}</obj></target> can be found in the scene."
    },
    {
      "family": "presence",
      "variant": "presence_count",
      "question": "What is the number of {categories} in the surroundings?",
      "answer": "Across all six cameras, a total of <target><cnt>{count}</cnt> <obj>{objects}</obj></target> can be counted."
    },
    {
      "family": "presence",
      "variant": "presence_count",
      "question": "How many {categories} do you observe around the vehicle?",
      "answer": "Looking at the whole scene, I can count <target><cnt>{count}</cnt> <obj>{objects}</obj></target> around the ego vehicle."
    },
    {
      "family": "presence",
      "variant": "presence_count",
      "question": "Tell me the count of {categories} in this scene.",
      "answer": "The detections in this scene include <target><cnt>{count}</cnt> <obj>{objects}</obj></target> all around the ego vehicle."
    },
    {
      "family": "direction",
      "variant": "direction",
      "question": "What objects are detected in the {camera} camera?",
      "answer": "In the <cam>{camera}</cam>, {targets} are detected.",
      "joiner": ", ",
      "final_joiner": " and "
    },
    {
      "family": "direction",
      "variant": "direction",
      "question": "What can be seen from the {camera} camera?",
      "answer": "From the <cam>{camera}</cam> camera of the ego vehicle, {targets} can be seen.",
      "joiner": ", ",
      "final_joiner": " and "
    },
    {
      "family": "direction",
      "variant": "direction",
      "question": "List the objects visible in the {camera} view.",
      "answer": "The <cam>{camera}</cam> view of the current scene shows {targets} in the detection range.",
      "joiner": ", ",
      "final_joiner": " and "
    },
    {
      "family": "direction",
      "variant": "direction",
      "question": "Which objects appear in the {camera} direction?",
      "answer": "Looking toward the <cam>{camera}</cam> direction, {targets} appear among the annotated objects.",
      "joiner": ", ",
      "final_joiner": " and "
    },
    {
      "family": "direction",
      "variant": "direction",
      "question": "Describe the detections in the {camera} camera.",
      "answer": "The <cam>{camera}</cam> camera of the ego vehicle captures {targets} in this scene.",
      "joiner": ", ",
      "final_joiner": " and "
    },
    {
      "family": "relative_distance",
      "variant": "relative_distance",
      "question": "How far is the closest object from the ego vehicle?",
      "answer": "The closest object is a <obj>{category}</obj> at a distance of <dst>{distance}</dst> meters."
    },
    {
      "family": "relative_distance",
      "variant": "relative_distance",
      "question": "What is the distance to the nearest object?",
      "answer": "The nearest object is a <obj>{category}</obj> located <dst>{distance}</dst> meters from the ego vehicle."
    },
    {
      "family": "relative_distance",
      "variant": "relative_distance",
      "question": "How distant is the closest detection?",
      "answer": "A <obj>{category}</obj> is the closest detection, measured at <dst>{distance}</dst> meters from the vehicle."
    },
    {
      "family": "relative_distance",
      "variant": "relative_distance",
      "question": "Give the range of the nearest object around the ego vehicle.",
      "answer": "The nearest object around the ego vehicle is a <obj>{category}</obj> at <dst>{distance}</dst> meters."
    },
    {
      "family": "relative_distance",
      "variant": "relative_distance",
      "question": "How close is the nearest obstacle to the vehicle?",
      "answer": "The nearest obstacle is a <obj>{category}</obj> positioned only <dst>{distance}</dst> meters from the ego vehicle."
    },
    {
      "family": "relative_location",
      "variant": "relative_location",
      "question": "Where is the closest object located?",
      "answer": "The closest object to the ego-car is a <obj>{category}</obj> located at coordinates <loc>{location}</loc>."
    },
    {
      "family": "relative_location",
      "variant": "relative_location",
      "question": "What are the coordinates of the nearest object?",
      "answer": "The nearest object is a <obj>{category}</obj> found at coordinates <loc>{location}</loc> in the ego frame."
    },
    {
      "family": "relative_location",
      "variant": "relative_location",
      "question": "Give the position of the closest detection.",
      "answer": "The closest detection is a <obj>{category}</obj> positioned at <loc>{location}</loc> relative to the ego vehicle."
    },
    {
      "family": "relative_location",
      "variant": "relative_location",
      "question": "Where exactly is the nearest object in the ego frame?",
      "answer": "In the ego frame, the nearest object is a <obj>{category}</obj> placed at <loc>{location}</loc>."
    },
    {
      "family": "relative_location",
      "variant": "relative_location",
      "question": "Report the location of the closest object around the vehicle.",
      "answer": "The closest object around the vehicle is a <obj>{category}</obj> sitting at coordinates <loc>{location}</loc>."
    }
  ]
})mqa_bank";

}  // namespace mqa
