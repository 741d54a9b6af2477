/* Minimal declaration-only jni.h stub for compile-checking generated
 * wrapper headers.  Inert inline bodies, no JVM behavior.  Declares
 * exactly the JNI vocabulary the generator may emit. */
#ifndef CWJ_STUB_JNI_H
#define CWJ_STUB_JNI_H

typedef unsigned char jboolean;
typedef signed char jbyte;
typedef unsigned short jchar;
typedef short jshort;
typedef int jint;
typedef long long jlong;
typedef float jfloat;
typedef double jdouble;
typedef jint jsize;

class _jobject {};
class _jclass : public _jobject {};
class _jthrowable : public _jobject {};
class _jstring : public _jobject {};
class _jarray : public _jobject {};
class _jobjectArray : public _jarray {};
class _jbooleanArray : public _jarray {};
class _jbyteArray : public _jarray {};
class _jcharArray : public _jarray {};
class _jshortArray : public _jarray {};
class _jintArray : public _jarray {};
class _jlongArray : public _jarray {};
class _jfloatArray : public _jarray {};
class _jdoubleArray : public _jarray {};

typedef _jobject* jobject;
typedef _jclass* jclass;
typedef _jthrowable* jthrowable;
typedef _jstring* jstring;
typedef _jarray* jarray;
typedef _jobjectArray* jobjectArray;
typedef _jbooleanArray* jbooleanArray;
typedef _jbyteArray* jbyteArray;
typedef _jcharArray* jcharArray;
typedef _jshortArray* jshortArray;
typedef _jintArray* jintArray;
typedef _jlongArray* jlongArray;
typedef _jfloatArray* jfloatArray;
typedef _jdoubleArray* jdoubleArray;
typedef jobject jweak;

struct _jfieldID;
typedef _jfieldID* jfieldID;
struct _jmethodID;
typedef _jmethodID* jmethodID;

#define JNIEXPORT
#define JNICALL
#define JNI_FALSE 0
#define JNI_TRUE 1

struct JNIEnv_;
typedef JNIEnv_ JNIEnv;
struct JavaVM_ {};
typedef JavaVM_ JavaVM;

struct JNIEnv_ {
    jclass FindClass(const char*) { return 0; }
    jobject NewWeakGlobalRef(jobject) { return 0; }
    void DeleteWeakGlobalRef(jobject) {}
    jclass GetSuperclass(jclass) { return 0; }
    jclass GetObjectClass(jobject) { return 0; }
    jmethodID GetMethodID(jclass, const char*, const char*) { return 0; }
    jmethodID GetStaticMethodID(jclass, const char*, const char*) { return 0; }
    jfieldID GetFieldID(jclass, const char*, const char*) { return 0; }
    jfieldID GetStaticFieldID(jclass, const char*, const char*) { return 0; }
    jobject NewObject(jclass, jmethodID, ...) { return 0; }
    jboolean ExceptionCheck() { return JNI_FALSE; }
    jboolean IsInstanceOf(jobject, jclass) { return JNI_FALSE; }
    jboolean IsSameObject(jobject, jobject) { return JNI_FALSE; }

    jobject GetObjectField(jobject, jfieldID) { return 0; }
    jboolean GetBooleanField(jobject, jfieldID) { return 0; }
    jbyte GetByteField(jobject, jfieldID) { return 0; }
    jchar GetCharField(jobject, jfieldID) { return 0; }
    jshort GetShortField(jobject, jfieldID) { return 0; }
    jint GetIntField(jobject, jfieldID) { return 0; }
    jlong GetLongField(jobject, jfieldID) { return 0; }
    jfloat GetFloatField(jobject, jfieldID) { return 0; }
    jdouble GetDoubleField(jobject, jfieldID) { return 0; }
    void SetObjectField(jobject, jfieldID, jobject) {}
    void SetBooleanField(jobject, jfieldID, jboolean) {}
    void SetByteField(jobject, jfieldID, jbyte) {}
    void SetCharField(jobject, jfieldID, jchar) {}
    void SetShortField(jobject, jfieldID, jshort) {}
    void SetIntField(jobject, jfieldID, jint) {}
    void SetLongField(jobject, jfieldID, jlong) {}
    void SetFloatField(jobject, jfieldID, jfloat) {}
    void SetDoubleField(jobject, jfieldID, jdouble) {}

    jobject GetStaticObjectField(jclass, jfieldID) { return 0; }
    jboolean GetStaticBooleanField(jclass, jfieldID) { return 0; }
    jbyte GetStaticByteField(jclass, jfieldID) { return 0; }
    jchar GetStaticCharField(jclass, jfieldID) { return 0; }
    jshort GetStaticShortField(jclass, jfieldID) { return 0; }
    jint GetStaticIntField(jclass, jfieldID) { return 0; }
    jlong GetStaticLongField(jclass, jfieldID) { return 0; }
    jfloat GetStaticFloatField(jclass, jfieldID) { return 0; }
    jdouble GetStaticDoubleField(jclass, jfieldID) { return 0; }
    void SetStaticObjectField(jclass, jfieldID, jobject) {}
    void SetStaticBooleanField(jclass, jfieldID, jboolean) {}
    void SetStaticByteField(jclass, jfieldID, jbyte) {}
    void SetStaticCharField(jclass, jfieldID, jchar) {}
    void SetStaticShortField(jclass, jfieldID, jshort) {}
    void SetStaticIntField(jclass, jfieldID, jint) {}
    void SetStaticLongField(jclass, jfieldID, jlong) {}
    void SetStaticFloatField(jclass, jfieldID, jfloat) {}
    void SetStaticDoubleField(jclass, jfieldID, jdouble) {}

    jobject CallObjectMethod(jobject, jmethodID, ...) { return 0; }
    jboolean CallBooleanMethod(jobject, jmethodID, ...) { return 0; }
    jbyte CallByteMethod(jobject, jmethodID, ...) { return 0; }
    jchar CallCharMethod(jobject, jmethodID, ...) { return 0; }
    jshort CallShortMethod(jobject, jmethodID, ...) { return 0; }
    jint CallIntMethod(jobject, jmethodID, ...) { return 0; }
    jlong CallLongMethod(jobject, jmethodID, ...) { return 0; }
    jfloat CallFloatMethod(jobject, jmethodID, ...) { return 0; }
    jdouble CallDoubleMethod(jobject, jmethodID, ...) { return 0; }
    void CallVoidMethod(jobject, jmethodID, ...) {}

    jobject CallNonvirtualObjectMethod(jobject, jclass, jmethodID, ...) { return 0; }
    jboolean CallNonvirtualBooleanMethod(jobject, jclass, jmethodID, ...) { return 0; }
    jbyte CallNonvirtualByteMethod(jobject, jclass, jmethodID, ...) { return 0; }
    jchar CallNonvirtualCharMethod(jobject, jclass, jmethodID, ...) { return 0; }
    jshort CallNonvirtualShortMethod(jobject, jclass, jmethodID, ...) { return 0; }
    jint CallNonvirtualIntMethod(jobject, jclass, jmethodID, ...) { return 0; }
    jlong CallNonvirtualLongMethod(jobject, jclass, jmethodID, ...) { return 0; }
    jfloat CallNonvirtualFloatMethod(jobject, jclass, jmethodID, ...) { return 0; }
    jdouble CallNonvirtualDoubleMethod(jobject, jclass, jmethodID, ...) { return 0; }
    void CallNonvirtualVoidMethod(jobject, jclass, jmethodID, ...) {}

    jobject CallStaticObjectMethod(jclass, jmethodID, ...) { return 0; }
    jboolean CallStaticBooleanMethod(jclass, jmethodID, ...) { return 0; }
    jbyte CallStaticByteMethod(jclass, jmethodID, ...) { return 0; }
    jchar CallStaticCharMethod(jclass, jmethodID, ...) { return 0; }
    jshort CallStaticShortMethod(jclass, jmethodID, ...) { return 0; }
    jint CallStaticIntMethod(jclass, jmethodID, ...) { return 0; }
    jlong CallStaticLongMethod(jclass, jmethodID, ...) { return 0; }
    jfloat CallStaticFloatMethod(jclass, jmethodID, ...) { return 0; }
    jdouble CallStaticDoubleMethod(jclass, jmethodID, ...) { return 0; }
    void CallStaticVoidMethod(jclass, jmethodID, ...) {}

    jobject GetObjectArrayElement(jobjectArray, jsize) { return 0; }
    void SetObjectArrayElement(jobjectArray, jsize, jobject) {}
    jsize GetArrayLength(jarray) { return 0; }
    jobjectArray NewObjectArray(jsize, jclass, jobject) { return 0; }

    jbooleanArray NewBooleanArray(jsize) { return 0; }
    jbyteArray NewByteArray(jsize) { return 0; }
    jcharArray NewCharArray(jsize) { return 0; }
    jshortArray NewShortArray(jsize) { return 0; }
    jintArray NewIntArray(jsize) { return 0; }
    jlongArray NewLongArray(jsize) { return 0; }
    jfloatArray NewFloatArray(jsize) { return 0; }
    jdoubleArray NewDoubleArray(jsize) { return 0; }

    void GetBooleanArrayRegion(jbooleanArray, jsize, jsize, jboolean*) {}
    void GetByteArrayRegion(jbyteArray, jsize, jsize, jbyte*) {}
    void GetCharArrayRegion(jcharArray, jsize, jsize, jchar*) {}
    void GetShortArrayRegion(jshortArray, jsize, jsize, jshort*) {}
    void GetIntArrayRegion(jintArray, jsize, jsize, jint*) {}
    void GetLongArrayRegion(jlongArray, jsize, jsize, jlong*) {}
    void GetFloatArrayRegion(jfloatArray, jsize, jsize, jfloat*) {}
    void GetDoubleArrayRegion(jdoubleArray, jsize, jsize, jdouble*) {}
    void SetBooleanArrayRegion(jbooleanArray, jsize, jsize, const jboolean*) {}
    void SetByteArrayRegion(jbyteArray, jsize, jsize, const jbyte*) {}
    void SetCharArrayRegion(jcharArray, jsize, jsize, const jchar*) {}
    void SetShortArrayRegion(jshortArray, jsize, jsize, const jshort*) {}
    void SetIntArrayRegion(jintArray, jsize, jsize, const jint*) {}
    void SetLongArrayRegion(jlongArray, jsize, jsize, const jlong*) {}
    void SetFloatArrayRegion(jfloatArray, jsize, jsize, const jfloat*) {}
    void SetDoubleArrayRegion(jdoubleArray, jsize, jsize, const jdouble*) {}
    jboolean* GetBooleanArrayElements(jbooleanArray, jboolean*) { return 0; }
    jbyte* GetByteArrayElements(jbyteArray, jboolean*) { return 0; }
    jchar* GetCharArrayElements(jcharArray, jboolean*) { return 0; }
    jshort* GetShortArrayElements(jshortArray, jboolean*) { return 0; }
    jint* GetIntArrayElements(jintArray, jboolean*) { return 0; }
    jlong* GetLongArrayElements(jlongArray, jboolean*) { return 0; }
    jfloat* GetFloatArrayElements(jfloatArray, jboolean*) { return 0; }
    jdouble* GetDoubleArrayElements(jdoubleArray, jboolean*) { return 0; }
    void ReleaseBooleanArrayElements(jbooleanArray, jboolean*, jint) {}
    void ReleaseByteArrayElements(jbyteArray, jbyte*, jint) {}
    void ReleaseCharArrayElements(jcharArray, jchar*, jint) {}
    void ReleaseShortArrayElements(jshortArray, jshort*, jint) {}
    void ReleaseIntArrayElements(jintArray, jint*, jint) {}
    void ReleaseLongArrayElements(jlongArray, jlong*, jint) {}
    void ReleaseFloatArrayElements(jfloatArray, jfloat*, jint) {}
    void ReleaseDoubleArrayElements(jdoubleArray, jdouble*, jint) {}
};

#endif
