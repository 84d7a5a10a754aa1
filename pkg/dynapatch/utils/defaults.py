# -*- coding: utf-8 -*-


from dynapatch.utils.decorators import classproperty


class SceneDefaults(object):
    """
    Collection of default values for the synthetic scene renderer
    """
    # square output image size in pixels
    @classproperty
    def IMAGE_SIZE(cls):
        return 144

    # pinhole camera intrinsics (focal length in pixels)
    @classproperty
    def FOCAL_LENGTH(cls):
        return 140.0

    # camera orbit around the object (constant distance for all frames)
    @classproperty
    def CAMERA_DISTANCE(cls):
        return 7.0

    @classproperty
    def CAMERA_ELEVATION(cls):
        return 10.0

    # point the camera is aimed at (object coordinates)
    @classproperty
    def CAMERA_TARGET(cls):
        return (0.0, 0.9, 0.0)

    # view angle range in degrees (0 degrees = dead-on view of the back)
    @classproperty
    def ANGLE_MIN(cls):
        return -45.0

    @classproperty
    def ANGLE_MAX(cls):
        return 45.0

    @classproperty
    def FRAMES_PER_DEGREE(cls):
        return 2.0

    # maximum angle jitter given as fraction of the frame spacing
    @classproperty
    def ANGLE_JITTER(cls):
        return 0.4

    # maximum relative per-frame brightness change
    @classproperty
    def BRIGHTNESS_JITTER(cls):
        return 0.1

    # maximum per-channel change of the body color
    @classproperty
    def COLOR_JITTER(cls):
        return 0.05

    # target body preset
    @classproperty
    def VARIANT(cls):
        return 'sedan'

    @classproperty
    def BACKGROUND(cls):
        return 'gradient'

    @classproperty
    def BACKGROUND_STYLES(cls):
        return ('flat', 'gradient')

    # neutral gray shown on screens without a patch
    @classproperty
    def SCREEN_GRAY(cls):
        return 0.5

    # screens projecting to fewer square pixels are treated as not visible
    @classproperty
    def MIN_SCREEN_AREA(cls):
        return 12.0

    @classproperty
    def TARGET_CLASS(cls):
        return 0

    @classproperty
    def CLASS_NAMES(cls):
        return ('car', 'bus', 'truck', 'person', 'boat', 'cake',
                'traffic_light', 'sign')

    # body colors (rgb) for each class
    @classproperty
    def PALETTE(cls):
        return (
            (0.75, 0.15, 0.15),
            (0.90, 0.75, 0.10),
            (0.20, 0.35, 0.75),
            (0.85, 0.65, 0.50),
            (0.95, 0.95, 0.95),
            (0.55, 0.30, 0.15),
            (0.20, 0.20, 0.20),
            (0.10, 0.60, 0.20),
        )

    # screens attached to the faces of the target's body. offset and size
    # are given in object units on the face as seen from the outside, the
    # offset measured from the face's top-left corner
    @classproperty
    def SCREEN_SLOTS(cls):
        return (
            {'slot': 0, 'face': 'back', 'offset': (0.4, 0.15),
             'size': (1.0, 0.45)},
            {'slot': 1, 'face': 'left', 'offset': (1.4, 0.125),
             'size': (1.6, 0.5)},
        )

    @classproperty
    def SCREEN_FACES(cls):
        return ('back', 'front', 'left', 'right')


class DetectorDefaults(object):
    """
    Collection of default values for the grid detector
    """
    @classproperty
    def GRID_SIZE(cls):
        return 9

    @classproperty
    def BOXES_PER_CELL(cls):
        return 5

    @classproperty
    def NUM_CLASSES(cls):
        return 8

    @classproperty
    def INPUT_SIZE(cls):
        return 144

    # convolution stack as (output channels, kernel size, stride) tuples,
    # the 1x1 prediction head is appended automatically
    @classproperty
    def CONV_LAYERS(cls):
        return ((8, 3, 2), (16, 3, 2), (32, 3, 2), (32, 3, 2), (32, 3, 1))

    @classproperty
    def DETECTION_THRESHOLD(cls):
        return 0.5

    @classproperty
    def NMS_IOU_THRESHOLD(cls):
        return 0.4

    @classproperty
    def LEAKY_SLOPE(cls):
        return 0.1


class TrainingDefaults(object):
    """
    Collection of default values for supervised detector training
    """
    @classproperty
    def EPOCHS(cls):
        return 60

    # training continues past the scheduled epochs until the clean
    # detection rate reaches the required rate or this bound is hit
    @classproperty
    def MAX_EPOCHS(cls):
        return 200

    @classproperty
    def LEARNING_RATE(cls):
        return 1.0E-3

    @classproperty
    def BATCH_SIZE(cls):
        return 8

    # fraction of the training frames kept back to measure the clean
    # detection rate
    @classproperty
    def HOLDOUT_FRACTION(cls):
        return 0.2

    @classproperty
    def REQUIRED_DETECTION_RATE(cls):
        return 0.95

    # weights of the box and the empty-slot objectness terms
    @classproperty
    def COORD_WEIGHT(cls):
        return 5.0

    @classproperty
    def NOOBJ_WEIGHT(cls):
        return 0.5


class AttackDefaults(object):
    """
    Collection of default values for patch crafting
    """
    @classproperty
    def LOSS_KINDS(cls):
        return ('cls', 'obj', 'obj_cls', 'semantic')

    # loss kinds usable as per-class base of the semantic objective
    @classproperty
    def SEMANTIC_BASE_KINDS(cls):
        return ('cls', 'obj_cls')

    @classproperty
    def LOSS_KIND(cls):
        return 'obj_cls'

    @classproperty
    def TARGET_CLASS(cls):
        return 0

    # car, bus and truck
    @classproperty
    def SEMANTIC_CLASSES(cls):
        return (0, 1, 2)

    @classproperty
    def SEMANTIC_BASE(cls):
        return 'obj_cls'

    @classproperty
    def TV_WEIGHT(cls):
        return 0.1

    @classproperty
    def TV_EPSILON(cls):
        return 1.0E-8

    @classproperty
    def LEARNING_RATE(cls):
        return 0.03

    @classproperty
    def ADAM_BETAS(cls):
        return (0.9, 0.999)

    @classproperty
    def ADAM_EPSILON(cls):
        return 1.0E-8

    @classproperty
    def EPOCHS(cls):
        return 30

    @classproperty
    def BATCH_SIZE(cls):
        return 8

    @classproperty
    def PATCH_HEIGHT(cls):
        return 16

    @classproperty
    def PATCH_WIDTH(cls):
        return 32

    # uniform range of the random patch initialization
    @classproperty
    def INIT_RANGE(cls):
        return (0.3, 0.7)

    # upper bound on the number of subsets tried by the split search (None
    # means the search is only bounded by the dataset's angle density)
    @classproperty
    def MAX_SUBSETS(cls):
        return None


class TransformDefaults(object):
    """
    Ranges of the random appearance transformation applied while crafting
    """
    @classproperty
    def BRIGHTNESS_RANGE(cls):
        return (-0.15, 0.15)

    @classproperty
    def CONTRAST_RANGE(cls):
        return (0.8, 1.2)

    @classproperty
    def NOISE_RANGE(cls):
        return (-0.05, 0.05)


class FileDefaults(object):
    """
    File names and format identifiers used for persisted artifacts
    """
    @classproperty
    def WEIGHTS_HEADER(cls):
        return 'PFDET v1'

    @classproperty
    def PATCH_HEADER(cls):
        return 'PFPATCH v1'

    @classproperty
    def SPLITS(cls):
        return ('train', 'test', 'detector')

    @classproperty
    def FNAMES(cls):
        return dict({
            'index': 'index.txt',
            'manifest': 'manifest.json',
            'weights': 'detector.pfdet',
            'report': 'report.json',
            'frames': 'frames.csv',
            'objective': 'objective.csv',
            'sweep': 'sweep.csv',
            'plan': 'plan.json',
            'config': 'config.yaml',
        })

    # pixels of this color mark screen corners in annotated images
    @classproperty
    def SENTINEL_COLOR(cls):
        return (255, 0, 255)
